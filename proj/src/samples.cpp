#include "skyrmion/samples.hpp"

#include <cmath>

namespace skyrmion::samples {

numerics::RadialFunction bump(const numerics::RadialGrid& grid, double lo, double hi, double amp) {
    require(lo > 0.0 && hi > lo, "bump: need 0 < lo < hi");
    const double sa = std::log(lo);
    const double sb = std::log(hi);
    return numerics::RadialFunction::from(grid, [&](double rho) {
        const double u = 2.0 * (std::log(rho) - sa) / (sb - sa) - 1.0;
        if (std::abs(u) >= 1.0) return 0.0;
        return amp * std::exp(1.0 - 1.0 / (1.0 - u * u));
    });
}

numerics::RadialFunction random_bump(const numerics::RadialGrid& grid, Rng& rng, double lo,
                                     double hi) {
    require(lo > 0.0 && hi > 1.5 * lo, "random_bump: range narrower than a factor 1.5");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double span = std::log(hi / lo);
    const double width = std::log(1.5) + unit(rng) * (span - std::log(1.5));
    const double start = std::log(lo) + unit(rng) * (span - width);
    const double amp = 2.0 * unit(rng) - 1.0;
    const double freq = 3.0 * unit(rng);
    const double phase = 6.283185307179586 * unit(rng);
    const auto b = bump(grid, std::exp(start), std::exp(start + width), amp);
    const auto mod = numerics::RadialFunction::from(grid, [&](double rho) {
        return 1.0 + 0.5 * std::sin(freq * std::log(rho) + phase);
    });
    return b * mod;
}

hessian::ModalField random_modal_field(const numerics::RadialGrid& grid,
                                       const std::vector<int>& modes, Rng& rng, double lo,
                                       double hi) {
    hessian::ModalField f(grid);
    for (int k : modes) {
        auto a1 = random_bump(grid, rng, lo, hi);
        auto b1 = random_bump(grid, rng, lo, hi);
        auto a2 = random_bump(grid, rng, lo, hi);
        auto b2 = random_bump(grid, rng, lo, hi);
        if (k == 0) {
            b1 = numerics::RadialFunction::zero(grid);
            b2 = numerics::RadialFunction::zero(grid);
        }
        f.add(k, std::move(a1), std::move(b1), std::move(a2), std::move(b2));
    }
    return f;
}

energy::TangentField2D random_tangent_field(const maps::MagnetizationField& base, Rng& rng,
                                            double reach, double width, double amp) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto& grid = base.grid();
    struct Blob {
        double c1, c2, w;
        maps::Vec3 a;
    };
    std::vector<Blob> blobs(3);
    for (auto& b : blobs) {
        b.c1 = reach * (2.0 * unit(rng) - 1.0);
        b.c2 = reach * (2.0 * unit(rng) - 1.0);
        b.w = width * (0.5 + 1.5 * unit(rng));
        b.a = amp * maps::Vec3(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
    }
    std::vector<maps::Vec3> v(grid.size(), maps::Vec3::Zero());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            maps::Vec3 s = maps::Vec3::Zero();
            for (const auto& b : blobs) {
                const double d1 = grid.x1(i) - b.c1;
                const double d2 = grid.x2(j) - b.c2;
                s += b.a * std::exp(-(d1 * d1 + d2 * d2) / (b.w * b.w));
            }
            v[grid.index(i, j)] = s;
        }
    }
    return energy::TangentField2D::project_onto_tangent(base, std::move(v));
}

}  // namespace skyrmion::samples
