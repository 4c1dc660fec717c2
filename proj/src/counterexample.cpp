#include "skyrmion/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skyrmion/maps.hpp"

namespace skyrmion::counterexample {

namespace {

void require_r(double r, const char* who) {
    require(std::isfinite(r) && r > 0.0, std::string(who) + ": r must be positive");
}

}  // namespace

double strip_density(double x1, double r) {
    require_r(r, "strip_density");
    const double q = r * r * x1 * x1 + 1.0;
    return 2.0 * (1.0 - r * r) / (q * q);
}

double strip_density_from_derivatives(double x1, double r) {
    require_r(r, "strip_density_from_derivatives");
    const maps::Vec3 b = maps::beltrami_strip({x1, 0.0}, r).value();
    const maps::Vec3 db = maps::beltrami_strip_dx1(x1, r);
    const maps::Vec3 curl(0.0, -db[2], db[1]);
    const double a = b[2] - 1.0;
    return 0.5 * db.squaredNorm() + r * (b - maps::e3).dot(curl) + 0.5 * a * a;
}

double analytic_slope(double r) {
    require_r(r, "analytic_slope");
    // int_R 2/(r^2 x^2 + 1)^2 dx with x = sinh t; the integrand decays like e^{-3|t|}
    const double T = 30.0 + std::abs(std::log(r));
    const std::size_t n = 120001;
    const double h = 2.0 * T / static_cast<double>(n - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = -T + h * static_cast<double>(i);
        const double x = std::sinh(t);
        const double q = r * r * x * x + 1.0;
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        s += w * 2.0 * std::cosh(t) / (q * q);
    }
    return 2.0 * (1.0 - r * r) * s * h;
}

double analytic_slope_closed_form(double r) {
    require_r(r, "analytic_slope_closed_form");
    return 2.0 * std::numbers::pi * (1.0 - r * r) / r;
}

io::Table StripEnergyReport::table() const {
    io::Table t({"L", "dirichlet", "helicity", "potential", "total", "degree"});
    for (std::size_t i = 0; i < L.size(); ++i) {
        const auto& e = energies[i];
        t.add_row({L[i], e.dirichlet, e.helicity, e.potential, e.total, e.degree});
    }
    return t;
}

io::Record StripEnergyReport::summary() const {
    io::Record rec;
    rec.set("r", r)
        .set("slope", slope)
        .set("intercept", intercept)
        .set("residual", residual)
        .set("relative_residual", relative_residual)
        .set("analytic_slope", analytic_slope);
    return rec;
}

StripEnergyReport stitched_energy_sweep(double r, const std::vector<double>& L_list,
                                        const SweepOptions& opt) {
    require_r(r, "stitched_energy_sweep");
    require(!L_list.empty(), "stitched_energy_sweep: empty L list");
    for (std::size_t i = 0; i < L_list.size(); ++i) {
        require(std::isfinite(L_list[i]) && L_list[i] >= 0.0,
                "stitched_energy_sweep: L values must be >= 0");
        require(i == 0 || L_list[i] > L_list[i - 1],
                "stitched_energy_sweep: L values must be strictly increasing");
    }
    const double h = opt.spacing > 0.0 ? opt.spacing : 0.05 / r;
    const double X1 = opt.half_width_x1 > 0.0 ? opt.half_width_x1 : 40.0 / r;
    const double cap = opt.cap > 0.0 ? opt.cap : 20.0 / r;
    if (opt.half_width_x2 > 0.0)
        require(opt.half_width_x2 >= L_list.back() + cap,
                "stitched_energy_sweep: grid too small for the largest L");

    StripEnergyReport rep;
    rep.r = r;
    rep.L = L_list;
    rep.analytic_slope = analytic_slope(r);
    const auto n1 = static_cast<std::size_t>(std::ceil(2.0 * X1 / h)) + 1;
    for (double L : L_list) {
        // n_L has a kink across |x2| = L; putting those lines on nodes makes
        // the finite-difference error there the same for every L
        double X2 = opt.half_width_x2;
        std::size_t n2 = 0;
        if (X2 > 0.0) {
            n2 = static_cast<std::size_t>(std::ceil(2.0 * X2 / h)) + 1;
        } else {
            const double hy = L > 0.0 ? L / std::max(1.0, std::round(L / h)) : h;
            const double cells = std::ceil((L + cap) / hy - 1e-9);
            X2 = cells * hy;
            n2 = 2 * static_cast<std::size_t>(cells) + 1;
        }
        const auto grid = numerics::Grid2D::rectangle(X1, n1, X2, n2);
        const auto field = maps::sample_field(
            [&](maps::Point2 x) { return maps::stitched_map(x, r, L); }, grid);
        rep.energies.push_back(energy::total_energy(field, r, 4.0, opt.quadrature));
    }

    const std::size_t m = L_list.size();
    if (m == 1) {
        rep.intercept = rep.energies[0].total;
        return rep;
    }
    double sl = 0.0, se = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sl += L_list[i];
        se += rep.energies[i].total;
    }
    const double ml = sl / m;
    const double me = se / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (L_list[i] - ml) * (L_list[i] - ml);
        sxy += (L_list[i] - ml) * (rep.energies[i].total - me);
    }
    rep.slope = sxy / sxx;
    rep.intercept = me - rep.slope * ml;
    double ss = 0.0, emax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double res = rep.energies[i].total - (rep.intercept + rep.slope * L_list[i]);
        ss += res * res;
        emax = std::max(emax, std::abs(rep.energies[i].total));
    }
    rep.residual = std::sqrt(ss / m);
    rep.relative_residual = emax > 0.0 ? rep.residual / emax : rep.residual;
    return rep;
}

}  // namespace skyrmion::counterexample
