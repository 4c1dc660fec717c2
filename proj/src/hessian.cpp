#include "skyrmion/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace skyrmion::hessian {

namespace {

constexpr double pi = std::numbers::pi;
using maps::SkyrmionProfile;

// Periodic spectral differentiation matrix on n equispaced angles.
std::vector<double> spectral_diff_matrix(std::size_t n) {
    const double h = 2.0 * pi / static_cast<double>(n);
    std::vector<double> d(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            if (j == l) continue;
            const double diff = static_cast<double>(static_cast<long>(j) - static_cast<long>(l));
            const double sign = ((j + l) % 2 == 0) ? 1.0 : -1.0;
            const double x = 0.5 * diff * h;
            d[j * n + l] = 0.5 * sign * (n % 2 == 0 ? std::cos(x) / std::sin(x) : 1.0 / std::sin(x));
        }
    }
    return d;
}

}  // namespace

ModeForm::ModeForm(int k_, double r_) : k(k_), r(r_) {
    require(k >= 0, "ModeForm: k must be >= 0");
    require(std::isfinite(r) && r >= 0.0, "ModeForm: r must be >= 0");
}

double mode_potential(const ModeForm& form, double rho) {
    const double s = SkyrmionProfile::sin_theta(rho);
    const double c = SkyrmionProfile::cos_theta(rho);
    const double dt = SkyrmionProfile::dtheta(rho);
    const double k = form.k;
    return (k * k + c * c) / (rho * rho) - dt * dt + 4.0 * form.r * form.r * s / rho;
}

double mode_coupling(const ModeForm& form, double rho) {
    const double s = SkyrmionProfile::sin_theta(rho);
    const double c = SkyrmionProfile::cos_theta(rho);
    return c / (rho * rho) - 2.0 * form.r * form.r * s / rho;
}

double mode_form_value(const ModeForm& form, const RadialFunction& alpha,
                       const RadialFunction& beta) {
    numerics::require_same_grid(alpha, beta);
    const auto& grid = alpha.grid();
    const auto da = numerics::central_diff(grid, alpha.values(), 4);
    const auto db = numerics::central_diff(grid, beta.values(), 4);
    std::vector<double> dens(grid.size());
    for (std::size_t i = 0; i < dens.size(); ++i) {
        const double rho = grid[i];
        const double a = alpha[i];
        const double b = beta[i];
        dens[i] = da[i] * da[i] + db[i] * db[i] + mode_potential(form, rho) * (a * a + b * b) +
                  4.0 * form.k * mode_coupling(form, rho) * a * b;
    }
    return numerics::integrate_radial(grid, dens, 1.0);
}

io::Record ModeReport::to_record() const {
    io::Record rec;
    rec.set("k", k).set("r", r).set("value", value);
    if (min_eigenvalue)
        rec.set("min_eig", *min_eigenvalue);
    else
        rec.set("min_eig", "none");
    rec.set("n", grid.size()).set("rho_min", grid.rho_min()).set("rho_max", grid.rho_max());
    return rec;
}

ModalField& ModalField::add(int k, RadialFunction a1, RadialFunction b1, RadialFunction a2,
                            RadialFunction b2) {
    require(k >= 0, "ModalField: k must be >= 0");
    for (const auto& m : modes_) require(m.k != k, "ModalField: mode " + std::to_string(k) + " already present");
    for (const RadialFunction* f : {&a1, &b1, &a2, &b2})
        require(f->grid() == grid_, "ModalField: coefficient on a different grid");
    modes_.push_back({k, std::move(a1), std::move(b1), std::move(a2), std::move(b2)});
    return *this;
}

int ModalField::max_mode() const {
    int m = 0;
    for (const auto& c : modes_) m = std::max(m, c.k);
    return m;
}

std::pair<double, double> ModalField::evaluate(double rho, double psi) const {
    double u1 = 0.0;
    double u2 = 0.0;
    for (const auto& m : modes_) {
        const double c = std::cos(m.k * psi);
        const double s = std::sin(m.k * psi);
        u1 += m.a1(rho) * c + m.b1(rho) * s;
        u2 += m.a2(rho) * c + m.b2(rho) * s;
    }
    return {u1, u2};
}

PolarGrid::PolarGrid(RadialGrid radial_, std::size_t n_angle_)
    : radial(std::move(radial_)), n_angle(n_angle_) {
    require(n_angle >= 3, "PolarGrid: need at least 3 angles");
}

double PolarGrid::psi(std::size_t j) const {
    return 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_angle);
}

PolarSamples sample_polar(const ModalField& field, std::size_t n_angle) {
    if (n_angle == 0) n_angle = static_cast<std::size_t>(4 * field.max_mode() + 8);
    PolarGrid pg(field.grid(), n_angle);
    const std::size_t nr = pg.radial.size();
    PolarSamples out{pg, std::vector<double>(nr * n_angle, 0.0), std::vector<double>(nr * n_angle, 0.0)};
    for (const auto& m : field.modes()) {
        for (std::size_t j = 0; j < n_angle; ++j) {
            const double c = std::cos(m.k * pg.psi(j));
            const double s = std::sin(m.k * pg.psi(j));
            for (std::size_t i = 0; i < nr; ++i) {
                out.u1[i * n_angle + j] += m.a1[i] * c + m.b1[i] * s;
                out.u2[i * n_angle + j] += m.a2[i] * c + m.b2[i] * s;
            }
        }
    }
    return out;
}

double rescaled_hessian_frame(const PolarSamples& u, double r) {
    require(std::isfinite(r) && r >= 0.0, "rescaled_hessian_frame: r must be >= 0");
    const auto& radial = u.grid.radial;
    const std::size_t nr = radial.size();
    const std::size_t na = u.grid.n_angle;
    require(u.u1.size() == nr * na && u.u2.size() == nr * na,
            "rescaled_hessian_frame: sample count does not match the polar grid");
    const auto dpsi = spectral_diff_matrix(na);
    std::vector<double> column(nr), dens(nr * na);
    std::vector<double> du1_rho(nr * na), du2_rho(nr * na);
    for (std::size_t j = 0; j < na; ++j) {
        for (int comp = 0; comp < 2; ++comp) {
            const auto& src = comp == 0 ? u.u1 : u.u2;
            auto& dst = comp == 0 ? du1_rho : du2_rho;
            for (std::size_t i = 0; i < nr; ++i) column[i] = src[i * na + j];
            const auto d = numerics::central_diff(radial, column, 4);
            for (std::size_t i = 0; i < nr; ++i) dst[i * na + j] = d[i];
        }
    }
    const double r2 = r * r;
    std::vector<double> ring(nr, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        const double rho = radial[i];
        const double s = SkyrmionProfile::sin_theta(rho);
        const double c = SkyrmionProfile::cos_theta(rho);
        const double dt = SkyrmionProfile::dtheta(rho);
        const double twist = 2.0 * c / (rho * rho) - 4.0 * r2 * s / rho;
        const double pot = -dt * dt + c * c / (rho * rho) + 4.0 * r2 * s / rho;
        double acc = 0.0;
        for (std::size_t j = 0; j < na; ++j) {
            double p1 = 0.0;
            double p2 = 0.0;
            for (std::size_t l = 0; l < na; ++l) {
                p1 += dpsi[j * na + l] * u.u1[i * na + l];
                p2 += dpsi[j * na + l] * u.u2[i * na + l];
            }
            const std::size_t k = i * na + j;
            const double a = u.u1[k];
            const double b = u.u2[k];
            acc += du1_rho[k] * du1_rho[k] + du2_rho[k] * du2_rho[k] +
                   (p1 * p1 + p2 * p2) / (rho * rho) + twist * (a * p2 - b * p1) +
                   pot * (a * a + b * b);
        }
        ring[i] = acc * 2.0 * pi / static_cast<double>(na);
    }
    return numerics::integrate_radial(radial, ring, 1.0);
}

SplitCheck mode_split_check(const ModalField& field, double r, std::size_t n_angle) {
    const double full = rescaled_hessian_frame(sample_polar(field, n_angle), r);
    double split = 0.0;
    for (const auto& m : field.modes()) {
        const ModeForm form(m.k, r);
        if (m.k == 0)
            split += 2.0 * pi * mode_form_value(form, m.a1, m.a2);
        else
            split += pi * (mode_form_value(form, m.a1, m.b2) + mode_form_value(form, m.b1, -m.a2));
    }
    return {full, split};
}

energy::TangentField2D modal_to_cartesian(const ModalField& field, const numerics::Grid2D& grid,
                                          double scale) {
    require(std::isfinite(scale) && scale > 0.0, "modal_to_cartesian: scale must be positive");
    std::vector<maps::Vec3> v(grid.size(), maps::Vec3::Zero());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double x1 = grid.x1(i) / scale;
            const double x2 = grid.x2(j) / scale;
            const double rho = std::hypot(x1, x2);
            if (rho == 0.0) continue;
            const double psi = std::atan2(x2, x1);
            const auto [u1, u2] = field.evaluate(rho, psi);
            if (u1 == 0.0 && u2 == 0.0) continue;
            const auto fr = maps::frame(rho, psi);
            v[grid.index(i, j)] = u1 * fr.j1.value() + u2 * fr.j2.value();
        }
    }
    return {grid, std::move(v)};
}

double rescaled_hessian_cartesian(const energy::TangentField2D& phi, double r,
                                  const energy::QuadratureOptions& opt) {
    require(std::isfinite(r) && r >= 0.0, "rescaled_hessian_cartesian: r must be >= 0");
    const auto& grid = phi.grid();
    std::span<const maps::Vec3> vals(phi.values());
    const auto d1 = numerics::central_diff<maps::Vec3>(grid, vals, numerics::Axis::x1, opt.diff_order);
    const auto d2 = numerics::central_diff<maps::Vec3>(grid, vals, numerics::Axis::x2, opt.diff_order);
    const double r2 = r * r;
    std::vector<double> dens(grid.size());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const std::size_t k = grid.index(i, j);
            const maps::Point2 x{grid.x1(i), grid.x2(j)};
            const maps::Vec3 h = maps::hedgehog(x).value();
            const auto g = maps::skyrmion_gradient(x, 1.0);
            const maps::Vec3 curl_h(g[1][2], -g[0][2], g[0][1] - g[1][0]);
            const double lam = g[0].squaredNorm() + g[1].squaredNorm() + 4.0 * r2 * h.dot(curl_h) -
                               4.0 * r2 * (1.0 - h[2]) * h[2];
            const maps::Vec3& p = phi[k];
            const maps::Vec3 curl_p(d2[k][2], -d1[k][2], d1[k][1] - d2[k][0]);
            dens[k] = d1[k].squaredNorm() + d2[k].squaredNorm() + 4.0 * r2 * curl_p.dot(p) +
                      4.0 * r2 * p[2] * p[2] - lam * p.squaredNorm();
        }
    }
    return energy::integrate_with_tail(grid, dens, opt.tail).value();
}

SubstitutionCheck substitution_identity_check(const RadialFunction& A, const RadialFunction& V,
                                              const RadialFunction& psi, const RadialFunction& g) {
    numerics::require_same_grid(A, V);
    numerics::require_same_grid(A, psi);
    numerics::require_same_grid(A, g);
    for (std::size_t i = 0; i < psi.size(); ++i)
        require(psi[i] > 0.0, "substitution_identity_check: psi must be positive");
    const auto& grid = A.grid();
    const std::size_t n = grid.size();
    const RadialFunction f = psi * g;
    const RadialFunction psi_g2 = psi * g * g;
    const auto df = numerics::central_diff(grid, f.values(), 4);
    const auto dg = numerics::central_diff(grid, g.values(), 4);
    const auto dpsi = numerics::central_diff(grid, psi.values(), 4);
    const auto dpg2 = numerics::central_diff(grid, psi_g2.values(), 4);
    std::vector<double> lhs(n), grad(n), kern(n);
    for (std::size_t i = 0; i < n; ++i) {
        lhs[i] = A[i] * df[i] * df[i] + V[i] * f[i] * f[i];
        grad[i] = psi[i] * psi[i] * A[i] * dg[i] * dg[i];
        kern[i] = A[i] * dpsi[i] * dpg2[i] + V[i] * psi[i] * psi[i] * g[i] * g[i];
    }
    SubstitutionCheck out{};
    out.lhs = numerics::integrate_radial(grid, lhs);
    out.gradient_term = numerics::integrate_radial(grid, grad);
    out.kernel_term = numerics::integrate_radial(grid, kern);
    out.rhs = out.gradient_term + out.kernel_term;
    return out;
}

RadialGrid default_eigen_grid() { return {1e-4, 1e4, 3000, numerics::Spacing::geometric}; }

namespace {

struct Discretization {
    numerics::SymTridiagonal stiffness;
    std::vector<double> mass;
};

// P1 elements on the grid with zero values at both ends; unknowns are the
// interior nodes. The scalar form is int (a')^2 + P a^2 rho drho.
template <class P>
Discretization assemble_scalar(const RadialGrid& grid, P&& potential) {
    const std::size_t n = grid.size();
    require(n >= 5, "min_mode_eigenvalue: grid needs at least 5 nodes");
    std::vector<double> kappa(n - 1);
    for (std::size_t e = 0; e + 1 < n; ++e)
        kappa[e] = 0.5 * (grid[e] + grid[e + 1]) / (grid[e + 1] - grid[e]);
    Discretization d;
    const std::size_t m = n - 2;
    d.stiffness.diag.resize(m);
    d.stiffness.off.resize(m - 1);
    d.mass.resize(m);
    for (std::size_t q = 0; q < m; ++q) {
        const std::size_t i = q + 1;
        const double rho = grid[i];
        const double w = 0.5 * (grid[i + 1] - grid[i - 1]);
        d.mass[q] = rho * w;
        d.stiffness.diag[q] = kappa[i - 1] + kappa[i] + potential(rho) * rho * w;
        if (q + 1 < m) d.stiffness.off[q] = -kappa[i];
    }
    return d;
}

Discretization branch(const ModeForm& form, const RadialGrid& grid, double sign) {
    return assemble_scalar(grid, [&](double rho) {
        return mode_potential(form, rho) + sign * 2.0 * form.k * mode_coupling(form, rho);
    });
}

}  // namespace

ModeEigen min_mode_eigenpair(const ModeForm& form, const RadialGrid& grid, bool symmetric) {
    std::optional<ModeEigen> best;
    for (double sign : {1.0, -1.0}) {
        if (symmetric && sign < 0.0) break;
        const auto d = branch(form, grid, sign);
        const auto ep = numerics::min_generalized_eig(d.stiffness, d.mass);
        if (best && ep.eigenvalue >= best->eigenvalue) continue;
        std::vector<double> a(grid.size(), 0.0), b(grid.size(), 0.0);
        for (std::size_t q = 0; q < ep.eigenvector.size(); ++q) {
            a[q + 1] = ep.eigenvector[q] / std::sqrt(2.0);
            b[q + 1] = sign * a[q + 1];
        }
        best = ModeEigen{ep.eigenvalue, RadialFunction(grid, std::move(a)),
                         RadialFunction(grid, std::move(b))};
    }
    return *best;
}

double min_mode_eigenvalue(const ModeForm& form, const RadialGrid& grid, bool symmetric) {
    return min_mode_eigenpair(form, grid, symmetric).eigenvalue;
}

bool mode_has_negative_direction(const ModeForm& form, const RadialGrid& grid, bool symmetric) {
    for (double sign : {1.0, -1.0}) {
        if (symmetric && sign < 0.0) break;
        const auto d = branch(form, grid, sign);
        if (numerics::count_below(d.stiffness, d.mass, 0.0) > 0) return true;
    }
    return false;
}

}  // namespace skyrmion::hessian
