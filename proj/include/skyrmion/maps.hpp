#pragma once

// Closed-form maps R^2 -> S^2: the hedgehog skyrmion and its rescalings, the
// radial profile angle with its moving frame, and the x2-invariant helical
// strip used to build energy-unbounded configurations.

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "skyrmion/numerics.hpp"

namespace skyrmion::maps {

using Vec3 = Eigen::Vector3d;

struct Point2 {
    double x1;
    double x2;
};

/// Three components with Euclidean norm 1 (to 1e-12).
class UnitVec3 {
public:
    static constexpr double tolerance = 1e-12;

    explicit UnitVec3(const Vec3& v);
    UnitVec3(double a, double b, double c) : UnitVec3(Vec3(a, b, c)) {}

    /// Normalises v; rejects the zero vector.
    static UnitVec3 normalized(const Vec3& v);

    const Vec3& value() const { return v_; }
    double operator[](int i) const { return v_[i]; }
    operator const Vec3&() const { return v_; }

private:
    Vec3 v_;
};

inline const Vec3 e3{0.0, 0.0, 1.0};

/// Profile angle of the unit hedgehog: sin th = 2 rho / (rho^2 + 1),
/// cos th = (rho^2 - 1) / (rho^2 + 1), th(0) = pi, th(inf) = 0.
struct SkyrmionProfile {
    static double sin_theta(double rho) { return 2.0 * rho / (rho * rho + 1.0); }
    static double cos_theta(double rho) { return (rho * rho - 1.0) / (rho * rho + 1.0); }
    static double theta(double rho);
    static double dtheta(double rho) { return -2.0 / (rho * rho + 1.0); }
    static double d2theta(double rho) {
        const double q = rho * rho + 1.0;
        return 4.0 * rho / (q * q);
    }
};

/// h(x) = (-2 x2, 2 x1, |x|^2 - 1) / (1 + |x|^2).
UnitVec3 hedgehog(Point2 x);

/// h(x / scale); scale 2r gives the critical point of the energy.
UnitVec3 skyrmion_at_scale(Point2 x, double scale);

/// Analytic first derivatives of h(x / scale): {d/dx1, d/dx2}.
std::array<Vec3, 2> skyrmion_gradient(Point2 x, double scale);

struct Frame {
    UnitVec3 j1;
    UnitVec3 j2;
};

/// Orthonormal tangent frame at h(rho, psi): J1 = (cos psi, sin psi, 0),
/// J2 = (-sin psi cos th, cos psi cos th, -sin th). Rejects rho <= 0.
Frame frame(double rho, double psi);

/// h in polar coordinates (rho, psi).
Vec3 hedgehog_polar(double rho, double psi);

/// b(x) = (0, 2 r x1, r^2 x1^2 - 1) / (r^2 x1^2 + 1); independent of x2.
UnitVec3 beltrami_strip(Point2 x, double r);

/// d b / d x1 (the x2 derivative vanishes).
Vec3 beltrami_strip_dx1(double x1, double r);

/// b on |x2| <= L, h at scale 1/r translated by -+L outside the strip.
UnitVec3 stitched_map(Point2 x, double r, double half_width);

/// Sampled S^2-valued map on a Grid2D.
class MagnetizationField {
public:
    MagnetizationField(numerics::Grid2D grid, std::vector<Vec3> values);

    const numerics::Grid2D& grid() const { return grid_; }
    const std::vector<Vec3>& values() const { return values_; }
    const Vec3& operator[](std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }

private:
    numerics::Grid2D grid_;
    std::vector<Vec3> values_;
};

using PointMap = std::function<UnitVec3(Point2)>;

/// Evaluates map at every node.
MagnetizationField sample_field(const PointMap& map, const numerics::Grid2D& grid);

/// The constant e3 field.
MagnetizationField constant_field(const numerics::Grid2D& grid);

}  // namespace skyrmion::maps
