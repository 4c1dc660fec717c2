#pragma once

// Energy E_p = D + r H + V_p of a sampled field, its topological degree, the
// Euler-Lagrange residual, both sides of the Bogomol'nyi-type factorization
// at p = 4, and the second-variation quadratic form around the skyrmion.
//
// Integrals over R^2 are truncated to the grid rectangle. With
// TailModel::radial the part outside is estimated assuming the integrand
// decays like c(angle) |x|^-4, which gives
//   tail = 1/2 * (X1 * (boundary integral over x1 = +-X1) + X2 * (... x2 = +-X2)).

#include <cstddef>
#include <vector>

#include "skyrmion/io.hpp"
#include "skyrmion/maps.hpp"
#include "skyrmion/numerics.hpp"

namespace skyrmion::energy {

using maps::MagnetizationField;
using maps::Vec3;
using numerics::Grid2D;

enum class TailModel { none, radial };

struct QuadratureOptions {
    int diff_order = 4;
    TailModel tail = TailModel::radial;
};

/// Truncated integral plus the estimated contribution from outside the grid.
struct Integral {
    double interior = 0.0;
    double tail = 0.0;
    double value() const { return interior + tail; }
};

Integral integrate_with_tail(const Grid2D& grid, std::span<const double> density, TailModel tail);

struct EnergyBreakdown {
    double dirichlet = 0.0;
    double helicity = 0.0;
    double potential = 0.0;
    double r = 0.0;
    double p = 4.0;
    double total = 0.0;
    double degree = 0.0;
    double tail_estimate = 0.0;  ///< part of total coming from the tail model
    double grid_x = 0.0;
    std::size_t grid_n = 0;

    double degree_defect() const;
    io::Record to_record() const;
};

/// Per-node perturbation (xi = n - h, or a tangent phi).
class TangentField2D {
public:
    TangentField2D(Grid2D grid, std::vector<Vec3> values);

    /// Drops the component along base at each node.
    static TangentField2D project_onto_tangent(const MagnetizationField& base,
                                               std::vector<Vec3> values);
    static TangentField2D zero(const Grid2D& grid);

    const Grid2D& grid() const { return grid_; }
    const std::vector<Vec3>& values() const { return values_; }
    const Vec3& operator[](std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }

    /// max over nodes of |value . base|.
    double max_normal_component(const MagnetizationField& base) const;
    bool tangent_at(const MagnetizationField& base, double tol = 1e-10) const;

    TangentField2D operator*(double s) const;

private:
    Grid2D grid_;
    std::vector<Vec3> values_;
};

/// xi = n - base.
TangentField2D difference(const MagnetizationField& n, const MagnetizationField& base);

double dirichlet(const MagnetizationField& field, const QuadratureOptions& opt = {});
double helicity(const MagnetizationField& field, const QuadratureOptions& opt = {});
/// (1 / 2^(p-1)) int |n - e3|^p; rejects p < 2.
double potential(const MagnetizationField& field, double p, const QuadratureOptions& opt = {});
double degree(const MagnetizationField& field, const QuadratureOptions& opt = {});

EnergyBreakdown total_energy(const MagnetizationField& field, double r, double p = 4.0,
                             const QuadratureOptions& opt = {});

/// Lambda(n) = |grad n|^2 + 2 r n . curl n - (1 - n3) n3 at each node.
std::vector<double> lagrange_multiplier(const MagnetizationField& field, double r,
                                        int diff_order = 4);

struct ResidualReport {
    std::vector<Vec3> residual;  ///< zero on boundary nodes
    double sup_norm = 0.0;
    double l2_norm = 0.0;
};

/// -Lap n + 2 r curl n - (1 - n3) e3 - Lambda(n) n at interior nodes, using
/// the 5-point Laplacian and 2nd-order central first derivatives.
ResidualReport el_residual(const MagnetizationField& field, double r);

struct FactorizationSides {
    double lhs = 0.0;            ///< E_4 - 4 pi r^2 Q
    double rhs = 0.0;            ///< (r^2/2) int |D1 n + n x D2 n|^2 + (1 - r^2) D
    double helical_square = 0.0; ///< int |D1 n + n x D2 n|^2
    double helical_sup = 0.0;    ///< max over nodes of |D1 n + n x D2 n|
};

/// D_j n = d_j n - (1/r) e_j x n. Rejects r <= 0.
FactorizationSides factorization_sides(const MagnetizationField& field, double r,
                                       const QuadratureOptions& opt = {});

/// (base + t phi) / |base + t phi|. Rejects phi not tangent at base.
MagnetizationField perturb_field(const MagnetizationField& base, const TangentField2D& phi,
                                 double t);

/// <L xi, xi> = int |grad xi|^2 + 2r int curl xi . xi + int xi3^2
///              - int Lambda(base) |xi|^2.
double hessian_form_2d(const TangentField2D& xi, double r, const MagnetizationField& base,
                       const QuadratureOptions& opt = {4, TailModel::none});

}  // namespace skyrmion::energy
