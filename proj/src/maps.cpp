#include "skyrmion/maps.hpp"

#include <cmath>
#include <string>

namespace skyrmion::maps {

UnitVec3::UnitVec3(const Vec3& v) : v_(v) {
    const double norm = v.norm();
    require(std::isfinite(norm) && std::abs(norm - 1.0) <= tolerance,
            "UnitVec3: vector is not of unit length (norm " + std::to_string(norm) + ")");
}

UnitVec3 UnitVec3::normalized(const Vec3& v) {
    const double norm = v.norm();
    require(std::isfinite(norm) && norm > 0.0, "UnitVec3: cannot normalise a zero vector");
    return UnitVec3(v / norm);
}

double SkyrmionProfile::theta(double rho) {
    return std::atan2(sin_theta(rho), cos_theta(rho));
}

UnitVec3 hedgehog(Point2 x) {
    const double q = 1.0 + x.x1 * x.x1 + x.x2 * x.x2;
    // |x|^2 - 1 computed as (q - 2) loses digits near the origin
    return UnitVec3::normalized(Vec3(-2.0 * x.x2, 2.0 * x.x1, x.x1 * x.x1 + x.x2 * x.x2 - 1.0) / q);
}

UnitVec3 skyrmion_at_scale(Point2 x, double scale) {
    require(std::isfinite(scale) && scale > 0.0, "skyrmion_at_scale: scale must be positive");
    return hedgehog({x.x1 / scale, x.x2 / scale});
}

std::array<Vec3, 2> skyrmion_gradient(Point2 x, double scale) {
    require(std::isfinite(scale) && scale > 0.0, "skyrmion_gradient: scale must be positive");
    const double y1 = x.x1 / scale;
    const double y2 = x.x2 / scale;
    const double q = 1.0 + y1 * y1 + y2 * y2;
    const double q2 = q * q;
    // h = (-2 y2, 2 y1, q - 2) / q
    const Vec3 dy1(4.0 * y1 * y2 / q2, (2.0 * q - 4.0 * y1 * y1) / q2, 4.0 * y1 / q2);
    const Vec3 dy2((-2.0 * q + 4.0 * y2 * y2) / q2, -4.0 * y1 * y2 / q2, 4.0 * y2 / q2);
    return {dy1 / scale, dy2 / scale};
}

Frame frame(double rho, double psi) {
    require(std::isfinite(rho) && rho > 0.0, "frame: undefined at rho <= 0");
    const double s = SkyrmionProfile::sin_theta(rho);
    const double c = SkyrmionProfile::cos_theta(rho);
    return {UnitVec3::normalized(Vec3(std::cos(psi), std::sin(psi), 0.0)),
            UnitVec3::normalized(Vec3(-std::sin(psi) * c, std::cos(psi) * c, -s))};
}

Vec3 hedgehog_polar(double rho, double psi) {
    const double s = SkyrmionProfile::sin_theta(rho);
    const double c = SkyrmionProfile::cos_theta(rho);
    return {-std::sin(psi) * s, std::cos(psi) * s, c};
}

UnitVec3 beltrami_strip(Point2 x, double r) {
    require(std::isfinite(r) && r > 0.0, "beltrami_strip: r must be positive");
    const double u = r * x.x1;
    const double q = u * u + 1.0;
    return UnitVec3::normalized(Vec3(0.0, 2.0 * u / q, (u * u - 1.0) / q));
}

Vec3 beltrami_strip_dx1(double x1, double r) {
    require(std::isfinite(r) && r > 0.0, "beltrami_strip_dx1: r must be positive");
    const double u = r * x1;
    const double q = u * u + 1.0;
    return {0.0, 2.0 * r * (1.0 - u * u) / (q * q), 4.0 * r * u / (q * q)};
}

UnitVec3 stitched_map(Point2 x, double r, double half_width) {
    require(std::isfinite(r) && r > 0.0, "stitched_map: r must be positive");
    require(std::isfinite(half_width) && half_width >= 0.0, "stitched_map: L must be >= 0");
    if (std::abs(x.x2) <= half_width) return beltrami_strip(x, r);
    const double shift = x.x2 > 0.0 ? -half_width : half_width;
    return skyrmion_at_scale({x.x1, x.x2 + shift}, 1.0 / r);
}

MagnetizationField::MagnetizationField(numerics::Grid2D grid, std::vector<Vec3> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    require(values_.size() == grid_.size(), "MagnetizationField: value count must match grid");
    for (const Vec3& v : values_) {
        const double norm = v.norm();
        require(std::isfinite(norm) && std::abs(norm - 1.0) <= UnitVec3::tolerance,
                "MagnetizationField: node value is not a unit vector");
    }
}

MagnetizationField sample_field(const PointMap& map, const numerics::Grid2D& grid) {
    std::vector<Vec3> values(grid.size());
    for (std::size_t j = 0; j < grid.ny(); ++j)
        for (std::size_t i = 0; i < grid.nx(); ++i)
            values[grid.index(i, j)] = map({grid.x1(i), grid.x2(j)}).value();
    return {grid, std::move(values)};
}

MagnetizationField constant_field(const numerics::Grid2D& grid) {
    return {grid, std::vector<Vec3>(grid.size(), e3)};
}

}  // namespace skyrmion::maps
