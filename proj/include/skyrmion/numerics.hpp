#pragma once

// Quadrature, finite differences and a tridiagonal generalized eigensolver.
//
// Radial quantities live on RadialGrid, either uniform in rho or geometric
// (uniform in s = log rho). On geometric grids every radial operation works in
// the s variable: integrals become trapezoid sums of f * rho^(w+1) ds and
// d/drho = (1/rho) d/ds. For compactly supported integrands the uniform
// trapezoid rule is then spectrally accurate.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "skyrmion/error.hpp"

namespace skyrmion::numerics {

enum class Spacing { uniform, geometric };
enum class Axis { x1, x2 };

/// Tensor grid on [-X1, X1] x [-X2, X2]. Node (i, j) has index j * nx + i,
/// i runs along x1.
class Grid2D {
public:
    /// Square grid [-X, X]^2 with n nodes per side.
    Grid2D(double half_width, std::size_t n_per_side);

    static Grid2D rectangle(double half_width_x1, std::size_t n_x1,
                            double half_width_x2, std::size_t n_x2);

    double half_width() const { return half_x1_; }
    double half_width_x1() const { return half_x1_; }
    double half_width_x2() const { return half_x2_; }
    std::size_t n_per_side() const { return nx_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return nx_ * ny_; }
    double spacing() const { return hx_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }

    double x1(std::size_t i) const { return -half_x1_ + hx_ * static_cast<double>(i); }
    double x2(std::size_t j) const { return -half_x2_ + hy_ * static_cast<double>(j); }
    std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }
    bool on_boundary(std::size_t i, std::size_t j) const {
        return i == 0 || j == 0 || i + 1 == nx_ || j + 1 == ny_;
    }

    bool operator==(const Grid2D& other) const = default;

private:
    Grid2D(double hx1, std::size_t nx1, double hx2, std::size_t nx2, int);

    double half_x1_;
    double half_x2_;
    std::size_t nx_;
    std::size_t ny_;
    double hx_;
    double hy_;
};

/// Strictly increasing nodes rho_min = rho_1 < ... < rho_n = rho_max.
class RadialGrid {
public:
    RadialGrid(double rho_min, double rho_max, std::size_t n, Spacing mode = Spacing::geometric);

    double rho_min() const { return rho_min_; }
    double rho_max() const { return rho_max_; }
    std::size_t size() const { return nodes_->size(); }
    Spacing spacing_mode() const { return mode_; }
    /// Step in rho (uniform) or in log rho (geometric).
    double step() const { return step_; }

    double operator[](std::size_t i) const { return (*nodes_)[i]; }
    std::span<const double> nodes() const { return *nodes_; }

    /// Evaluate g at every node.
    template <class F>
    std::vector<double> sample(F&& g) const {
        std::vector<double> out(size());
        for (std::size_t i = 0; i < size(); ++i) out[i] = g((*nodes_)[i]);
        return out;
    }

    std::string describe() const;

    bool operator==(const RadialGrid& other) const {
        return rho_min_ == other.rho_min_ && rho_max_ == other.rho_max_ &&
               size() == other.size() && mode_ == other.mode_;
    }

private:
    double rho_min_;
    double rho_max_;
    Spacing mode_;
    double step_;
    std::shared_ptr<const std::vector<double>> nodes_;
};

/// Real function sampled on a RadialGrid. Values are finite.
class RadialFunction {
public:
    RadialFunction(RadialGrid grid, std::vector<double> values);

    template <class F>
    static RadialFunction from(const RadialGrid& grid, F&& g) {
        return RadialFunction(grid, grid.sample(g));
    }
    static RadialFunction zero(const RadialGrid& grid) {
        return RadialFunction(grid, std::vector<double>(grid.size(), 0.0));
    }

    const RadialGrid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Cubic Lagrange interpolation (in log rho on geometric grids); zero
    /// outside [rho_min, rho_max].
    double operator()(double rho) const;

    /// Smallest closed interval outside of which all values vanish exactly.
    /// Returns {0, 0} for the zero function.
    std::pair<double, double> support() const;

    RadialFunction operator*(const RadialFunction& other) const;
    RadialFunction operator*(double s) const;
    RadialFunction operator+(const RadialFunction& other) const;
    RadialFunction operator-() const { return *this * -1.0; }

private:
    RadialGrid grid_;
    std::vector<double> values_;
};

void require_same_grid(const RadialFunction& a, const RadialFunction& b);

/// Integral of f(rho) rho^w over [rho_min, rho_max].
double integrate_radial(const RadialFunction& f, double weight_exponent = 0.0);
double integrate_radial(const RadialGrid& grid, std::span<const double> f,
                        double weight_exponent = 0.0);

/// Product trapezoid rule over the grid rectangle.
double integrate_grid2d(const Grid2D& grid, std::span<const double> values);

/// d/drho of samples. order 2: central interior, 3-point one-sided at the
/// ends. order 4: 5-point central interior, 5-point one-sided near the ends.
std::vector<double> central_diff(const RadialGrid& grid, std::span<const double> values,
                                 int order = 2);
RadialFunction central_diff(const RadialFunction& f, int order = 2);

namespace detail {
// Derivative along one axis of a strided line of samples with unit spacing
// scaled by 1/h. T needs +, - and scalar *.
template <class T>
T diff_at(std::span<const T> v, std::size_t n, std::size_t stride, std::size_t k, double h,
          int order) {
    auto at = [&](std::size_t m) -> const T& { return v[m * stride]; };
    if (order == 4 && n >= 5) {
        if (k >= 2 && k + 2 < n)
            return (at(k - 2) - at(k + 2) + 8.0 * (at(k + 1) - at(k - 1))) * (1.0 / (12.0 * h));
        if (k < 2) {
            const std::size_t o = 0;
            const std::size_t p = k - o;
            if (p == 0)
                return (-25.0 * at(o) + 48.0 * at(o + 1) - 36.0 * at(o + 2) + 16.0 * at(o + 3) -
                        3.0 * at(o + 4)) * (1.0 / (12.0 * h));
            return (-3.0 * at(o) - 10.0 * at(o + 1) + 18.0 * at(o + 2) - 6.0 * at(o + 3) +
                    at(o + 4)) * (1.0 / (12.0 * h));
        }
        const std::size_t o = n - 1;
        if (k == o)
            return (25.0 * at(o) - 48.0 * at(o - 1) + 36.0 * at(o - 2) - 16.0 * at(o - 3) +
                    3.0 * at(o - 4)) * (1.0 / (12.0 * h));
        return (3.0 * at(o) + 10.0 * at(o - 1) - 18.0 * at(o - 2) + 6.0 * at(o - 3) -
                at(o - 4)) * (1.0 / (12.0 * h));
    }
    if (k == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) * (1.0 / (2.0 * h));
    if (k + 1 == n) return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * (1.0 / (2.0 * h));
    return (at(k + 1) - at(k - 1)) * (1.0 / (2.0 * h));
}
}  // namespace detail

/// Derivative of per-node samples along one grid axis (orders 2 or 4).
template <class T>
std::vector<T> central_diff(const Grid2D& grid, std::span<const T> values, Axis axis,
                            int order = 2) {
    require(values.size() == grid.size(), "central_diff: sample count does not match grid");
    require(order == 2 || order == 4, "central_diff: order must be 2 or 4");
    std::vector<T> out(values.size());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            if (axis == Axis::x1) {
                out[grid.index(i, j)] = detail::diff_at<T>(values.subspan(grid.index(0, j)),
                                                           grid.nx(), 1, i, grid.hx(), order);
            } else {
                out[grid.index(i, j)] = detail::diff_at<T>(values.subspan(i), grid.ny(),
                                                           grid.nx(), j, grid.hy(), order);
            }
        }
    }
    return out;
}

/// Symmetric tridiagonal matrix: diagonal of length n, off-diagonal n - 1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
    std::size_t size() const { return diag.size(); }
};

struct EigenPair {
    double eigenvalue;
    std::vector<double> eigenvector;  ///< normalised so that v^T M v = 1
};

/// Number of eigenvalues of K v = lambda M v strictly below sigma (inertia of
/// K - sigma M via the LDL^T pivots).
std::size_t count_below(const SymTridiagonal& stiffness, std::span<const double> mass,
                        double sigma);

/// Smallest generalized eigenpair of K v = lambda M v for symmetric
/// tridiagonal K and positive diagonal M. Bisection on the inertia of
/// K - sigma M, eigenvector by inverse iteration from the lower bracket.
EigenPair min_generalized_eig(const SymTridiagonal& stiffness, std::span<const double> mass);

}  // namespace skyrmion::numerics
