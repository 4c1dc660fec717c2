#include "skyrmion/instability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace skyrmion::instability {

namespace {

using maps::SkyrmionProfile;

// Quintic smoothstep and its antiderivative (P(1) = 1/2).
double smoothstep(double u) { return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u); }
double smoothstep_integral(double u) { return u * u * u * u * (2.5 - 3.0 * u + u * u); }

RadialGrid refined(const RadialGrid& g) {
    return {g.rho_min(), g.rho_max(), 2 * g.size() - 1, g.spacing_mode()};
}

}  // namespace

double f_k_r(double rho, int k, double r) {
    require(std::isfinite(rho) && rho > 0.0, "f_k_r: rho must be positive");
    require(k >= 0, "f_k_r: k must be >= 0");
    const double s = SkyrmionProfile::sin_theta(rho);
    const double c = SkyrmionProfile::cos_theta(rho);
    const double kk = k;
    const double rho3 = rho * rho * rho;
    return 2.0 * (kk * kk - 1.0) * s * s / rho3 + 4.0 * (kk - 1.0) * s * s * c / rho3 +
           8.0 * (1.0 - kk) * r * r * s * s * s / (rho * rho);
}

double far_field_coefficient(int k, double r) {
    return (k - 1.0) * (8.0 * r * r - k - 3.0);
}

double transformed_mode_form(int k, double r, const RadialFunction& xi) {
    const auto& grid = xi.grid();
    const auto d = numerics::central_diff(grid, xi.values(), 4);
    std::vector<double> dens(grid.size());
    for (std::size_t i = 0; i < dens.size(); ++i) {
        const double rho = grid[i];
        const double s = SkyrmionProfile::sin_theta(rho);
        dens[i] = 2.0 * s * s / rho * d[i] * d[i] + f_k_r(rho, k, r) * xi[i] * xi[i];
    }
    return numerics::integrate_radial(grid, dens);
}

RadialFunction rescale_xi(const RadialFunction& xi, double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0, "rescale_xi: lambda must be positive");
    if (lambda == 1.0) return xi;
    const auto& grid = xi.grid();
    const auto [a, b] = xi.support();
    if (a == 0.0 && b == 0.0) return xi;
    require(a / lambda >= grid.rho_min() && b / lambda <= grid.rho_max(),
            "rescale_xi: rescaled support leaves the grid");
    const double inv = 1.0 / (lambda * lambda);
    return RadialFunction::from(grid, [&](double rho) { return xi(lambda * rho) * inv; });
}

double limit_form(int k, double r, const RadialFunction& xi) {
    const auto& grid = xi.grid();
    const auto d = numerics::central_diff(grid, xi.values(), 4);
    const double c = far_field_coefficient(k, r);
    std::vector<double> dens(grid.size());
    for (std::size_t i = 0; i < dens.size(); ++i) {
        const double rho = grid[i];
        const double r2 = rho * rho;
        dens[i] = 8.0 * d[i] * d[i] / (r2 * rho) - 8.0 * c * xi[i] * xi[i] / (r2 * r2 * rho);
    }
    return numerics::integrate_radial(grid, dens);
}

double hardy_ratio(const RadialFunction& xi) {
    const auto d = numerics::central_diff(xi, 4);
    const double num = numerics::integrate_radial(xi * xi, -5.0);
    const double den = numerics::integrate_radial(d * d, -3.0);
    require(den > 0.0, "hardy_ratio: zero denominator");
    return num / den;
}

HardyFunction::HardyFunction(double A, const RadialGrid& grid, double shoulder)
    : A_(A), shoulder_(shoulder), xi_(RadialFunction::zero(grid)) {
    require(std::isfinite(A) && A > 1.0, "make_hardy_function: A must exceed 1");
    require(shoulder > 0.0 && shoulder < 0.5, "make_hardy_function: shoulder must be in (0, 1/2)");
    require(grid.rho_min() <= 0.25 && grid.rho_max() >= 4.0 * A,
            "make_hardy_function: grid must cover [1/4, 4A]");
    xi_ = RadialFunction::from(grid, [this](double rho) { return xi_at(rho); });
}

double HardyFunction::ramp(double t) const {
    const double d = shoulder_;
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (t > 0.5) return 1.0 - ramp(1.0 - t);
    if (t <= d) return d * smoothstep_integral(t / d) / (1.0 - d);
    return (0.5 * d + (t - d)) / (1.0 - d);
}

double HardyFunction::ramp_prime(double t) const {
    const double d = shoulder_;
    if (t <= 0.0 || t >= 1.0) return 0.0;
    if (t > 0.5) return ramp_prime(1.0 - t);
    if (t <= d) return smoothstep(t / d) / (1.0 - d);
    return 1.0 / (1.0 - d);
}

double HardyFunction::chi(double rho) const {
    if (rho <= 0.5 || rho >= 2.0 * A_) return 0.0;
    if (rho >= 1.0 && rho <= A_) return 1.0;
    const double ln2 = std::numbers::ln2;
    if (rho < 1.0) return ramp((std::log(rho) + ln2) / ln2);
    return ramp((std::log(2.0 * A_) - std::log(rho)) / ln2);
}

double HardyFunction::chi_prime(double rho) const {
    if (rho <= 0.5 || rho >= 2.0 * A_ || (rho >= 1.0 && rho <= A_)) return 0.0;
    const double ln2 = std::numbers::ln2;
    if (rho < 1.0) return ramp_prime((std::log(rho) + ln2) / ln2) / (ln2 * rho);
    return -ramp_prime((std::log(2.0 * A_) - std::log(rho)) / ln2) / (ln2 * rho);
}

double HardyFunction::max_slope_on_upper_ramp() const {
    double m = 0.0;
    for (double rho : xi_.grid().nodes())
        if (rho >= A_ && rho <= 2.0 * A_) m = std::max(m, std::abs(chi_prime(rho)));
    return m;
}

HardyFunction make_hardy_function(double A, const RadialGrid& grid) { return {A, grid}; }

RadialGrid SearchOptions::default_search_grid() {
    return {1e-3, 1e8, 12000, numerics::Spacing::geometric};
}

io::Record UnstableDirection::to_record() const {
    io::Record rec;
    rec.set("k", k)
        .set("r", r)
        .set("A", A)
        .set("lambda", lambda)
        .set("form_value", form_value)
        .set("certified_value", certified_value)
        .set("grid", xi.grid().describe());
    if (!notes.empty()) rec.set("notes", notes);
    return rec;
}

io::Table UnstableDirection::xi_table() const {
    io::Table t({"rho", "xi"});
    const auto& g = xi.grid();
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool near = xi[i] != 0.0 || (i > 0 && xi[i - 1] != 0.0) || (i + 1 < n && xi[i + 1] != 0.0);
        if (near) t.add_row({g[i], xi[i]});
    }
    return t;
}

namespace {

std::optional<RadialFunction> hardy_witness(double A, double lambda, const RadialGrid& grid) {
    const HardyFunction hf(A, grid);
    const double lo = 0.5 / lambda;
    const double hi = 2.0 * A / lambda;
    if (lo < grid.rho_min() || hi > grid.rho_max()) return std::nullopt;
    if (lambda == 1.0) return hf.xi();
    // Sample the closed form directly rather than interpolating the grid copy.
    const double inv = 1.0 / (lambda * lambda);
    return RadialFunction::from(grid, [&](double rho) { return hf.xi_at(lambda * rho) * inv; });
}

}  // namespace

SearchResult find_negative_direction(int k, double r, const SearchOptions& opt) {
    require(k >= 2, "find_negative_direction: k must be >= 2");
    require(std::isfinite(r) && r >= 0.0, "find_negative_direction: r must be >= 0");
    require(!opt.A_values.empty() && !opt.lambda_values.empty(),
            "find_negative_direction: empty sweep");
    std::vector<double> As(opt.A_values);
    std::vector<double> lambdas(opt.lambda_values);
    std::sort(As.begin(), As.end());
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    const RadialGrid fine = refined(opt.grid);

    SearchResult res;
    res.best_value = std::numeric_limits<double>::infinity();
    for (double A : As) {
        require(A > 1.0, "find_negative_direction: A must exceed 1");
        for (double lambda : lambdas) {
            require(lambda > 0.0, "find_negative_direction: lambda must be positive");
            const auto xi = hardy_witness(A, lambda, opt.grid);
            if (!xi) {
                res.sweep.push_back({A, lambda, std::numeric_limits<double>::quiet_NaN()});
                continue;
            }
            const double v = transformed_mode_form(k, r, *xi);
            res.sweep.push_back({A, lambda, v});
            if (v < res.best_value) {
                res.best_value = v;
                res.best_A = A;
                res.best_lambda = lambda;
            }
            if (v < 0.0 && !res.witness) {
                const auto xi_fine = hardy_witness(A, lambda, fine);
                const double vf = transformed_mode_form(k, r, *xi_fine);
                if (vf < 0.0) {
                    res.witness = UnstableDirection{.k = k,
                                                    .r = r,
                                                    .A = A,
                                                    .lambda = lambda,
                                                    .xi = *xi,
                                                    .form_value = v,
                                                    .certified_value = vf,
                                                    .notes = "alpha=beta=(sin theta/rho)*xi"};
                }
            }
        }
    }
    return res;
}

io::Record ThresholdResult::to_record() const {
    io::Record rec;
    rec.set("k", k)
        .set("r_c", r_c)
        .set("bracket_lo", bracket_lo)
        .set("bracket_hi", bracket_hi)
        .set("eig_lo", eig_lo)
        .set("eig_hi", eig_hi)
        .set("iterations", iterations)
        .set("symmetric", symmetric);
    return rec;
}

ThresholdResult threshold_scan(int k, double r_lo, double r_hi, double tol,
                               const ThresholdOptions& opt) {
    require(std::isfinite(r_lo) && std::isfinite(r_hi) && r_lo >= 0.0 && r_lo < r_hi,
            "threshold_scan: need 0 <= r_lo < r_hi");
    require(std::isfinite(tol) && tol > 0.0, "threshold_scan: tol must be positive");
    auto unstable = [&](double r) {
        return hessian::mode_has_negative_direction(hessian::ModeForm(k, r), opt.grid, opt.symmetric);
    };
    const bool at_lo = unstable(r_lo);
    const bool at_hi = unstable(r_hi);
    require(at_lo != at_hi, "threshold_scan: no sign change of the minimal eigenvalue on [" +
                                io::format_number(r_lo) + ", " + io::format_number(r_hi) + "]");
    // orient so that `stable` is the end without a negative eigenvalue
    double stable = at_lo ? r_hi : r_lo;
    double unstab = at_lo ? r_lo : r_hi;
    ThresholdResult res;
    res.k = k;
    res.symmetric = opt.symmetric;
    while (std::abs(unstab - stable) > tol) {
        const double mid = 0.5 * (stable + unstab);
        (unstable(mid) ? unstab : stable) = mid;
        ++res.iterations;
    }
    res.bracket_lo = std::min(stable, unstab);
    res.bracket_hi = std::max(stable, unstab);
    res.r_c = 0.5 * (stable + unstab);
    res.eig_lo = hessian::min_mode_eigenvalue(hessian::ModeForm(k, res.bracket_lo), opt.grid, opt.symmetric);
    res.eig_hi = hessian::min_mode_eigenvalue(hessian::ModeForm(k, res.bracket_hi), opt.grid, opt.symmetric);
    return res;
}

hessian::ModalField unstable_modal_field(const RadialFunction& xi, int k, double u2_sign) {
    require(k >= 1, "unstable_modal_field: k must be >= 1");
    require(u2_sign == 1.0 || u2_sign == -1.0, "unstable_modal_field: u2_sign must be +1 or -1");
    const auto& grid = xi.grid();
    const RadialFunction alpha = RadialFunction::from(grid, [](double rho) {
        return SkyrmionProfile::sin_theta(rho) / rho;
    }) * xi;
    const RadialFunction zero = RadialFunction::zero(grid);
    hessian::ModalField f(grid);
    f.add(k, alpha, zero, zero, alpha * u2_sign);
    return f;
}

energy::TangentField2D assemble_unstable_field(const RadialFunction& xi, int k,
                                               const numerics::Grid2D& grid, double scale,
                                               double u2_sign) {
    return hessian::modal_to_cartesian(unstable_modal_field(xi, k, u2_sign), grid, scale);
}

}  // namespace skyrmion::instability
