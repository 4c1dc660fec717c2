#pragma once

// Second variation of E_4 at the skyrmion, rescaled to unit size, in three
// equivalent guises: Cartesian (phi tangent to h), polar moving frame
// (phi = u1 J1 + u2 J2), and Fourier-mode radial forms H_k^r[alpha, beta].
//
// Mode convention: u1 = a1 cos k psi + b1 sin k psi, u2 = a2 cos k psi +
// b2 sin k psi. Integrating the frame form over psi gives
//   k = 0:  2 pi H_0[a1, a2]
//   k >= 1: pi (H_k[a1, b2] + H_k[b1, -a2]).

#include <optional>
#include <vector>

#include "skyrmion/energy.hpp"
#include "skyrmion/io.hpp"
#include "skyrmion/numerics.hpp"

namespace skyrmion::hessian {

using numerics::RadialFunction;
using numerics::RadialGrid;

/// H_k^r. k >= 0, r >= 0 (r = 0 is kept for the positivity sweeps).
struct ModeForm {
    int k;
    double r;
    ModeForm(int k_, double r_);
};

/// Potential multiplying alpha^2 + beta^2:
/// k^2/rho^2 - th'^2 + cos^2 th/rho^2 + 4 r^2 sin th/rho.
double mode_potential(const ModeForm& form, double rho);
/// Coefficient W with cross term 4 k W alpha beta: cos th/rho^2 - 2 r^2 sin th/rho.
double mode_coupling(const ModeForm& form, double rho);

double mode_form_value(const ModeForm& form, const RadialFunction& alpha,
                       const RadialFunction& beta);

struct ModeReport {
    int k = 0;
    double r = 0.0;
    double value = 0.0;
    std::optional<double> min_eigenvalue;
    RadialGrid grid;

    io::Record to_record() const;
};

/// One Fourier mode of (u1, u2).
struct ModeCoefficients {
    int k;
    RadialFunction a1, b1, a2, b2;
};

/// Finite Fourier sum in psi with radial coefficients on one grid.
class ModalField {
public:
    explicit ModalField(RadialGrid grid) : grid_(std::move(grid)) {}

    /// Rejects a repeated k or coefficients on another grid.
    ModalField& add(int k, RadialFunction a1, RadialFunction b1, RadialFunction a2,
                    RadialFunction b2);

    const RadialGrid& grid() const { return grid_; }
    const std::vector<ModeCoefficients>& modes() const { return modes_; }
    int max_mode() const;

    /// (u1, u2) at (rho, psi) using interpolated coefficients.
    std::pair<double, double> evaluate(double rho, double psi) const;

private:
    RadialGrid grid_;
    std::vector<ModeCoefficients> modes_;
};

struct PolarGrid {
    RadialGrid radial;
    std::size_t n_angle;
    PolarGrid(RadialGrid radial_, std::size_t n_angle_);
    double psi(std::size_t j) const;
};

/// u1, u2 at polar nodes, index i * n_angle + j (i radial, j angular).
struct PolarSamples {
    PolarGrid grid;
    std::vector<double> u1;
    std::vector<double> u2;
};

PolarSamples sample_polar(const ModalField& field, std::size_t n_angle);

/// int |grad u|^2 + (2 cos th/rho^2 - 4 r^2 sin th/rho) u x d_psi u
///   + (-th'^2 + cos^2 th/rho^2 + 4 r^2 sin th/rho)(u1^2 + u2^2) dx,
/// with u x d_psi u = u1 d_psi u2 - u2 d_psi u1; psi-derivatives spectral.
double rescaled_hessian_frame(const PolarSamples& u, double r);

struct SplitCheck {
    double full;
    double split;
};

/// full: the frame form on a polar grid; split: the sum of mode forms.
SplitCheck mode_split_check(const ModalField& field, double r, std::size_t n_angle = 0);

/// phi(x) = u1 J1 + u2 J2 evaluated at x / scale; zero at the origin and
/// wherever the coefficients vanish. Tangent to h at that scale.
energy::TangentField2D modal_to_cartesian(const ModalField& field, const numerics::Grid2D& grid,
                                          double scale = 1.0);

/// ||grad phi||^2 + 4 r^2 <curl phi, phi> + 4 r^2 ||phi_3||^2 - int Lambda_r(h) |phi|^2
/// with Lambda_r = |grad h|^2 + 4 r^2 h . curl h - 4 r^2 (1 - h3) h3 for the
/// unit-scale h (analytic derivatives).
double rescaled_hessian_cartesian(const energy::TangentField2D& phi, double r,
                                  const energy::QuadratureOptions& opt = {4,
                                                                         energy::TailModel::none});

struct SubstitutionCheck {
    double lhs;          ///< int A (f')^2 + V f^2 with f = psi g
    double rhs;          ///< gradient_term + kernel_term
    double gradient_term;///< int psi^2 A (g')^2
    double kernel_term;  ///< int (L psi) psi g^2, in weak form int A psi' (psi g^2)' + V psi^2 g^2
};

/// L = -d/drho A d/drho + V. Rejects psi <= 0 anywhere and mismatched grids.
SubstitutionCheck substitution_identity_check(const RadialFunction& A, const RadialFunction& V,
                                              const RadialFunction& psi, const RadialFunction& g);

/// Default radial grid for the eigenproblem: geometric [1e-4, 1e4], 3000 nodes.
RadialGrid default_eigen_grid();

struct ModeEigen {
    double eigenvalue;
    RadialFunction alpha;  ///< minimiser, alpha-component
    RadialFunction beta;
};

/// Lowest Rayleigh quotient H_k^r[a, b] / int (a^2 + b^2) rho over P1
/// elements with zero end values and lumped mass. symmetric restricts to
/// a = b; otherwise the a = -b branch is also solved and the minimum kept
/// (the two branches decouple exactly).
ModeEigen min_mode_eigenpair(const ModeForm& form, const RadialGrid& grid, bool symmetric);
double min_mode_eigenvalue(const ModeForm& form, const RadialGrid& grid, bool symmetric);

/// True iff the discretised form has a negative eigenvalue (inertia count).
bool mode_has_negative_direction(const ModeForm& form, const RadialGrid& grid, bool symmetric);

}  // namespace skyrmion::hessian
