#pragma once

// Negative directions of the mode forms. With alpha = beta = (sin th/rho) xi
// the form H_k^r becomes int 2 sin^2 th/rho (xi')^2 + f_k^r xi^2, and under
// xi_lambda(rho) = xi(lambda rho)/lambda^2 with lambda -> 0 it tends to
//   I_k^r[xi] = int 8 (xi')^2/rho^3 - 8 (k-1)(8r^2-k-3) xi^2/rho^5.
// Near-optimisers of the Hardy inequality int xi^2/rho^5 <= C int (xi')^2/rho^3
// (sharp C = 1/4) make I_k^r negative once (k-1)(8r^2-k-3) > 4.

#include <optional>
#include <vector>

#include "skyrmion/energy.hpp"
#include "skyrmion/hessian.hpp"
#include "skyrmion/io.hpp"
#include "skyrmion/numerics.hpp"

namespace skyrmion::instability {

using numerics::RadialFunction;
using numerics::RadialGrid;

/// 2(k^2-1) sin^2 th/rho^3 + 4(k-1) sin^2 th cos th/rho^3 + 8(1-k) r^2 sin^3 th/rho^2.
double f_k_r(double rho, int k, double r);

/// (k-1)(8r^2-k-3): the far-field coefficient, f_k^r ~ -8 c rho^-5.
double far_field_coefficient(int k, double r);

double transformed_mode_form(int k, double r, const RadialFunction& xi);

/// xi(lambda rho)/lambda^2 resampled on the same grid (cubic interpolation).
/// Throws InvalidInput if the rescaled support leaves the grid.
RadialFunction rescale_xi(const RadialFunction& xi, double lambda);

double limit_form(int k, double r, const RadialFunction& xi);

/// int xi^2/rho^5 / int (xi')^2/rho^3. Throws on a zero denominator.
double hardy_ratio(const RadialFunction& xi);

/// Cutoff chi_A: 1 on [1, A], 0 outside [1/2, 2A]. Each ramp is linear in
/// log rho with short quintic-smoothstep shoulders (a fraction `shoulder` of
/// the ramp at each end), so chi is C^3 and on [A, 2A]
/// |chi'| <= 1/(A ln 2 (1 - shoulder)) < 2/A.
class HardyFunction {
public:
    static constexpr double default_shoulder = 0.004;

    HardyFunction(double A, const RadialGrid& grid, double shoulder = default_shoulder);

    double A() const { return A_; }
    double shoulder() const { return shoulder_; }
    const RadialFunction& xi() const { return xi_; }

    double chi(double rho) const;
    double chi_prime(double rho) const;
    /// rho^2 chi(rho)
    double xi_at(double rho) const { return rho * rho * chi(rho); }

    /// Grid audit of the listed constraints; returns max |chi'| on [A, 2A].
    double max_slope_on_upper_ramp() const;

private:
    double ramp(double t) const;
    double ramp_prime(double t) const;

    double A_;
    double shoulder_;
    RadialFunction xi_;
};

/// Requires A > 1 and a grid covering [1/4, 4A].
HardyFunction make_hardy_function(double A, const RadialGrid& grid);

struct SearchOptions {
    std::vector<double> A_values{10.0, 100.0, 1000.0, 10000.0};
    std::vector<double> lambda_values{1.0, 0.1, 0.01, 0.001};
    RadialGrid grid = default_search_grid();

    static RadialGrid default_search_grid();
};

struct SweepPoint {
    double A;
    double lambda;
    double value;  ///< transformed form, NaN if the rescaled support left the grid
};

struct UnstableDirection {
    int k = 0;
    double r = 0.0;
    double A = 0.0;
    double lambda = 0.0;
    RadialFunction xi;
    double form_value = 0.0;       ///< transformed_mode_form on the search grid
    double certified_value = 0.0;  ///< same on the grid with doubled resolution
    std::string notes;

    io::Record to_record() const;
    /// (rho, xi) on the support of xi plus one node either side.
    io::Table xi_table() const;
};

struct SearchResult {
    std::optional<UnstableDirection> witness;
    double best_value = 0.0;
    double best_A = 0.0;
    double best_lambda = 0.0;
    std::vector<SweepPoint> sweep;
};

/// Sweeps A (ascending) then lambda (descending). The witness is the first
/// sweep point with a negative value that stays negative after re-sampling
/// on a grid with doubled resolution. Requires k >= 2.
SearchResult find_negative_direction(int k, double r, const SearchOptions& opt = {});

struct ThresholdOptions {
    bool symmetric = true;
    RadialGrid grid = hessian::default_eigen_grid();
};

struct ThresholdResult {
    int k = 0;
    double r_c = 0.0;
    double bracket_lo = 0.0;  ///< last r without a negative eigenvalue
    double bracket_hi = 0.0;  ///< first r with one
    double eig_lo = 0.0;
    double eig_hi = 0.0;
    int iterations = 0;
    bool symmetric = true;

    io::Record to_record() const;
};

/// Bisection on "the discretised H_k^r has a negative eigenvalue" down to
/// bracket width tol. Throws InvalidInput when both ends agree.
ThresholdResult threshold_scan(int k, double r_lo, double r_hi, double tol,
                               const ThresholdOptions& opt = {});

/// u1 = alpha cos k psi, u2 = u2_sign * alpha sin k psi, alpha = (sin th/rho) xi.
/// u2_sign = +1 pairs the form as pi H_k[alpha, alpha] (the unstable
/// symmetric branch); -1 gives pi H_k[alpha, -alpha].
hessian::ModalField unstable_modal_field(const RadialFunction& xi, int k = 3,
                                         double u2_sign = 1.0);

/// phi = u1 J1 + u2 J2 of unstable_modal_field sampled at x / scale.
energy::TangentField2D assemble_unstable_field(const RadialFunction& xi, int k,
                                               const numerics::Grid2D& grid, double scale = 1.0,
                                               double u2_sign = 1.0);

}  // namespace skyrmion::instability
