#pragma once

// The helical strip b(x) and the stitched maps n_L: on the strip |x2| <= L the
// energy density is 2(1 - r^2)/(r^2 x1^2 + 1)^2, so E_4[n_L] is affine in L
// with slope 2 (1 - r^2) int_R 2/(r^2 x^2 + 1)^2 dx = 2 pi (1 - r^2)/r.

#include <vector>

#include "skyrmion/energy.hpp"
#include "skyrmion/io.hpp"

namespace skyrmion::counterexample {

/// 2(1 - r^2)/(r^2 x1^2 + 1)^2.
double strip_density(double x1, double r);

/// 1/2 |grad b|^2 + r (b - e3) . curl b + 1/2 (b3 - 1)^2 from the analytic
/// derivative of b.
double strip_density_from_derivatives(double x1, double r);

/// dE_4[n_L]/dL by 1D quadrature (x1 = sinh t, trapezoid in t).
double analytic_slope(double r);

/// 2 pi (1 - r^2)/r.
double analytic_slope_closed_form(double r);

struct SweepOptions {
    double spacing = 0.0;         ///< target grid spacing; 0 -> 0.05/r
    double half_width_x1 = 0.0;   ///< 0 -> 40/r
    double cap = 0.0;             ///< room beyond |x2| = L for the half-skyrmions; 0 -> 20/r
    double half_width_x2 = 0.0;   ///< 0 -> about L + cap per L, with |x2| = L on nodes; otherwise fixed and checked
    energy::QuadratureOptions quadrature{4, energy::TailModel::none};
};

struct StripEnergyReport {
    double r = 0.0;
    std::vector<double> L;
    std::vector<energy::EnergyBreakdown> energies;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;           ///< rms of the linear-fit residuals
    double relative_residual = 0.0;  ///< residual / max |E|
    double analytic_slope = 0.0;

    io::Table table() const;     ///< L dirichlet helicity potential total degree
    io::Record summary() const;  ///< r slope intercept residual analytic_slope
};

/// Samples n_L on a grid per L, computes E_4 by 2D quadrature and fits E
/// against L by least squares. L_list must be non-empty, strictly
/// increasing and >= 0; a fixed half_width_x2 smaller than L + cap is
/// rejected.
StripEnergyReport stitched_energy_sweep(double r, const std::vector<double>& L_list,
                                        const SweepOptions& opt = {});

}  // namespace skyrmion::counterexample
