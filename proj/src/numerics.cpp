#include "skyrmion/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace skyrmion::numerics {

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

// ---------------------------------------------------------------------------
// Grid2D

Grid2D::Grid2D(double half_width, std::size_t n_per_side)
    : Grid2D(half_width, n_per_side, half_width, n_per_side, 0) {}

Grid2D Grid2D::rectangle(double half_width_x1, std::size_t n_x1, double half_width_x2,
                         std::size_t n_x2) {
    return Grid2D(half_width_x1, n_x1, half_width_x2, n_x2, 0);
}

Grid2D::Grid2D(double hx1, std::size_t nx1, double hx2, std::size_t nx2, int)
    : half_x1_(hx1), half_x2_(hx2), nx_(nx1), ny_(nx2) {
    require(std::isfinite(hx1) && hx1 > 0.0 && std::isfinite(hx2) && hx2 > 0.0,
            "Grid2D: half width must be positive");
    require(nx1 >= 3 && nx2 >= 3, "Grid2D: need at least 3 nodes per side");
    hx_ = 2.0 * half_x1_ / static_cast<double>(nx_ - 1);
    hy_ = 2.0 * half_x2_ / static_cast<double>(ny_ - 1);
}

// ---------------------------------------------------------------------------
// RadialGrid

RadialGrid::RadialGrid(double rho_min, double rho_max, std::size_t n, Spacing mode)
    : rho_min_(rho_min), rho_max_(rho_max), mode_(mode) {
    require(std::isfinite(rho_min) && rho_min > 0.0, "RadialGrid: rho_min must be positive");
    require(std::isfinite(rho_max) && rho_max > rho_min, "RadialGrid: need rho_max > rho_min");
    require(n >= 3, "RadialGrid: need at least 3 nodes");
    std::vector<double> nodes(n);
    const double last = static_cast<double>(n - 1);
    if (mode == Spacing::uniform) {
        step_ = (rho_max - rho_min) / last;
        for (std::size_t i = 0; i < n; ++i) nodes[i] = rho_min + step_ * static_cast<double>(i);
    } else {
        step_ = std::log(rho_max / rho_min) / last;
        for (std::size_t i = 0; i < n; ++i)
            nodes[i] = rho_min * std::exp(step_ * static_cast<double>(i));
    }
    nodes.front() = rho_min;
    nodes.back() = rho_max;
    for (std::size_t i = 1; i < n; ++i)
        require(nodes[i] > nodes[i - 1], "RadialGrid: nodes are not strictly increasing");
    nodes_ = std::make_shared<const std::vector<double>>(std::move(nodes));
}

std::string RadialGrid::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s[%.6g,%.6g]x%zu",
                  mode_ == Spacing::geometric ? "geometric" : "uniform", rho_min_, rho_max_,
                  size());
    return buf;
}

// ---------------------------------------------------------------------------
// RadialFunction

RadialFunction::RadialFunction(RadialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    require(values_.size() == grid_.size(), "RadialFunction: value count must match grid");
    require(all_finite(values_), "RadialFunction: values must be finite");
}

double RadialFunction::operator()(double rho) const {
    const std::size_t n = size();
    if (!(rho >= grid_.rho_min() && rho <= grid_.rho_max())) return 0.0;
    const bool geo = grid_.spacing_mode() == Spacing::geometric;
    const double t = geo ? std::log(rho / grid_.rho_min()) / grid_.step()
                         : (rho - grid_.rho_min()) / grid_.step();
    auto cell = static_cast<std::ptrdiff_t>(std::floor(t));
    cell = std::clamp<std::ptrdiff_t>(cell, 0, static_cast<std::ptrdiff_t>(n) - 2);
    // four-point stencil cell-1 .. cell+2, shifted inward at the ends
    std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
    if (n < 4) first = 0;
    const std::size_t m = std::min<std::size_t>(4, n);
    double result = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        const double ta = static_cast<double>(first + static_cast<std::ptrdiff_t>(a));
        double weight = 1.0;
        for (std::size_t b = 0; b < m; ++b) {
            if (b == a) continue;
            const double tb = static_cast<double>(first + static_cast<std::ptrdiff_t>(b));
            weight *= (t - tb) / (ta - tb);
        }
        result += weight * values_[static_cast<std::size_t>(first) + a];
    }
    return result;
}

std::pair<double, double> RadialFunction::support() const {
    auto nz = [](double v) { return v != 0.0; };
    auto first = std::find_if(values_.begin(), values_.end(), nz);
    if (first == values_.end()) return {0.0, 0.0};
    auto last = std::find_if(values_.rbegin(), values_.rend(), nz);
    const auto i0 = static_cast<std::size_t>(first - values_.begin());
    const auto i1 = values_.size() - 1 - static_cast<std::size_t>(last - values_.rbegin());
    return {grid_[i0], grid_[i1]};
}

void require_same_grid(const RadialFunction& a, const RadialFunction& b) {
    require(a.grid() == b.grid(), "radial functions live on different grids");
}

RadialFunction RadialFunction::operator*(const RadialFunction& other) const {
    require_same_grid(*this, other);
    std::vector<double> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = values_[i] * other.values_[i];
    return {grid_, std::move(v)};
}

RadialFunction RadialFunction::operator*(double s) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= s;
    return {grid_, std::move(v)};
}

RadialFunction RadialFunction::operator+(const RadialFunction& other) const {
    require_same_grid(*this, other);
    std::vector<double> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = values_[i] + other.values_[i];
    return {grid_, std::move(v)};
}

// ---------------------------------------------------------------------------
// Quadrature

double integrate_radial(const RadialGrid& grid, std::span<const double> f, double weight_exponent) {
    require(f.size() == grid.size(), "integrate_radial: sample count does not match grid");
    require(all_finite(f), "integrate_radial: non-finite integrand");
    require(std::isfinite(weight_exponent), "integrate_radial: non-finite weight exponent");
    const std::size_t n = grid.size();
    auto weighted = [&](std::size_t i) {
        const double rho = grid[i];
        const double extra = grid.spacing_mode() == Spacing::geometric ? 1.0 : 0.0;
        const double w = weight_exponent + extra;
        return w == 0.0 ? f[i] : f[i] * std::pow(rho, w);
    };
    double sum = 0.5 * (weighted(0) + weighted(n - 1));
    for (std::size_t i = 1; i + 1 < n; ++i) sum += weighted(i);
    return sum * grid.step();
}

double integrate_radial(const RadialFunction& f, double weight_exponent) {
    return integrate_radial(f.grid(), f.values(), weight_exponent);
}

double integrate_grid2d(const Grid2D& grid, std::span<const double> values) {
    require(values.size() == grid.size(), "integrate_grid2d: sample count does not match grid");
    double total = 0.0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double wy = (j == 0 || j + 1 == grid.ny()) ? 0.5 : 1.0;
        double row = 0.0;
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double v = values[grid.index(i, j)];
            require(std::isfinite(v), "integrate_grid2d: non-finite integrand");
            row += (i == 0 || i + 1 == grid.nx()) ? 0.5 * v : v;
        }
        total += wy * row;
    }
    return total * grid.hx() * grid.hy();
}

// ---------------------------------------------------------------------------
// Finite differences

std::vector<double> central_diff(const RadialGrid& grid, std::span<const double> values, int order) {
    require(values.size() == grid.size(), "central_diff: sample count does not match grid");
    require(grid.size() >= 3, "central_diff: need at least 3 nodes");
    require(order == 2 || order == 4, "central_diff: order must be 2 or 4");
    const std::size_t n = grid.size();
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = detail::diff_at<double>(values, n, 1, k, grid.step(), order);
    if (grid.spacing_mode() == Spacing::geometric)
        for (std::size_t k = 0; k < n; ++k) out[k] /= grid[k];
    return out;
}

RadialFunction central_diff(const RadialFunction& f, int order) {
    return {f.grid(), central_diff(f.grid(), f.values(), order)};
}

// ---------------------------------------------------------------------------
// Generalized tridiagonal eigenproblem

namespace {

void validate(const SymTridiagonal& k, std::span<const double> mass) {
    const std::size_t n = k.size();
    require(n >= 1, "min_generalized_eig: empty matrix");
    require(k.off.size() + 1 == n, "min_generalized_eig: off-diagonal must have n-1 entries");
    require(mass.size() == n, "min_generalized_eig: mass must have n entries");
    for (double m : mass)
        require(std::isfinite(m) && m > 0.0, "min_generalized_eig: mass entries must be positive");
    require(all_finite(k.diag) && all_finite(k.off), "min_generalized_eig: non-finite stiffness");
}

double pivot_floor(const SymTridiagonal& k) {
    double scale = 0.0;
    for (double d : k.diag) scale = std::max(scale, std::abs(d));
    for (double e : k.off) scale = std::max(scale, std::abs(e));
    return std::numeric_limits<double>::min() * std::max(1.0, scale) * 1e3;
}

}  // namespace

std::size_t count_below(const SymTridiagonal& k, std::span<const double> mass, double sigma) {
    const double floor = pivot_floor(k);
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        q = k.diag[i] - sigma * mass[i] - (i == 0 ? 0.0 : k.off[i - 1] * k.off[i - 1] / q);
        if (std::abs(q) < floor) q = -floor;
        if (q < 0.0) ++count;
    }
    return count;
}

EigenPair min_generalized_eig(const SymTridiagonal& k, std::span<const double> mass) {
    validate(k, mass);
    const std::size_t n = k.size();

    // Gershgorin interval of M^{-1/2} K M^{-1/2}
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(k.off[i - 1]) / std::sqrt(mass[i] * mass[i - 1]);
        if (i + 1 < n) radius += std::abs(k.off[i]) / std::sqrt(mass[i] * mass[i + 1]);
        const double centre = k.diag[i] / mass[i];
        lo = std::min(lo, centre - radius);
        hi = std::max(hi, centre + radius);
    }
    const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    lo -= pad;
    hi += pad;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_below(k, mass, mid) > 0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) ||
            hi - lo <= std::numeric_limits<double>::min())
            break;
    }
    const double lambda = 0.5 * (lo + hi);

    // Inverse iteration with shift lo: no eigenvalue lies below lo, so
    // K - lo M is positive semidefinite and LDL^T needs no pivoting.
    const double floor = pivot_floor(k);
    std::vector<double> piv(n), mult(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double q = k.diag[i] - lo * mass[i];
        if (i > 0) {
            mult[i] = k.off[i - 1] / piv[i - 1];
            q -= mult[i] * k.off[i - 1];
        }
        piv[i] = std::abs(q) < floor ? floor : q;
    }
    auto solve = [&](std::vector<double>& b) {
        for (std::size_t i = 1; i < n; ++i) b[i] -= mult[i] * b[i - 1];
        b[n - 1] /= piv[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) b[i] = (b[i] - k.off[i] * b[i + 1]) / piv[i];
    };
    auto apply_k = [&](const std::vector<double>& v, std::size_t i) {
        double r = k.diag[i] * v[i];
        if (i > 0) r += k.off[i - 1] * v[i - 1];
        if (i + 1 < n) r += k.off[i] * v[i + 1];
        return r;
    };
    auto m_normalise = [&](std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += mass[i] * v[i] * v[i];
        s = std::sqrt(s);
        if (!(s > 0.0) || !std::isfinite(s)) throw NumericFailure("inverse iteration broke down");
        for (double& x : v) x /= s;
    };

    double kscale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        kscale = std::max(kscale, std::abs(k.diag[i]) + std::abs(lambda) * mass[i]);
    const double tol = 1e-10 * kscale;

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(1.0 + static_cast<double>(i));
    m_normalise(v);
    for (int it = 0; it < 200; ++it) {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = mass[i] * v[i];
        solve(w);
        m_normalise(w);
        v.swap(w);
        double res2 = 0.0, v2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = apply_k(v, i) - lambda * mass[i] * v[i];
            res2 += r * r;
            v2 += v[i] * v[i];
        }
        if (std::sqrt(res2 / v2) <= tol) {
            // fix the sign so the largest component is positive
            auto big = std::max_element(v.begin(), v.end(),
                                        [](double a, double b) { return std::abs(a) < std::abs(b); });
            if (*big < 0.0)
                for (double& x : v) x = -x;
            return {lambda, std::move(v)};
        }
    }
    throw NumericFailure("min_generalized_eig: inverse iteration did not converge");
}

}  // namespace skyrmion::numerics
