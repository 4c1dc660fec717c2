#pragma once

// Seeded random test functions: compactly supported radial bumps, random
// finite-mode fields and smooth perturbations of a field.

#include <cstdint>
#include <random>

#include "skyrmion/energy.hpp"
#include "skyrmion/hessian.hpp"
#include "skyrmion/numerics.hpp"

namespace skyrmion::samples {

using Rng = std::mt19937_64;

/// amp * exp(1 - 1/(1 - u^2)) with u affine in log rho, mapping [lo, hi] to
/// [-1, 1]; exactly zero outside (lo, hi).
numerics::RadialFunction bump(const numerics::RadialGrid& grid, double lo, double hi,
                              double amp = 1.0);

/// Bump with random support inside [lo, hi] (at least a factor 1.5 wide in
/// rho), random amplitude in [-1, 1] and a random smooth modulation.
numerics::RadialFunction random_bump(const numerics::RadialGrid& grid, Rng& rng, double lo,
                                     double hi);

/// Random ModalField with the listed modes, each coefficient a random bump
/// supported in [lo, hi].
hessian::ModalField random_modal_field(const numerics::RadialGrid& grid,
                                       const std::vector<int>& modes, Rng& rng, double lo,
                                       double hi);

/// Sum of a few Gaussian bumps with random centres in [-reach, reach]^2,
/// widths in [0.5, 2] * width and random vector amplitudes up to amp,
/// projected onto the tangent plane of base.
energy::TangentField2D random_tangent_field(const maps::MagnetizationField& base, Rng& rng,
                                            double reach, double width, double amp);

}  // namespace skyrmion::samples
