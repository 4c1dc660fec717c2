// Closed-form maps: hedgehog, profile angle, moving frame, helical strip.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skyrmion/maps.hpp"

using namespace skyrmion;
using namespace skyrmion::maps;
using P = SkyrmionProfile;

namespace {

bool near(const Vec3& a, const Vec3& b, double tol) { return (a - b).norm() <= tol; }

// log-uniform sample in (lo, hi)
double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

}  // namespace

TEST_CASE("hedgehog examples") {
    CHECK(near(hedgehog({0, 0}), Vec3(0, 0, -1), 1e-15));
    CHECK(near(hedgehog({1, 0}), Vec3(0, 1, 0), 1e-15));
    for (double R : {1e3, 1e6}) {
        for (double a : {0.0, 1.0, 2.5, 4.0}) {
            const auto v = hedgehog({R * std::cos(a), R * std::sin(a)});
            CHECK(near(v, e3, 3.0 / R));
        }
    }
}

TEST_CASE("skyrmion_at_scale examples") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01(0.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        Point2 x{n01(rng), n01(rng)};
        CHECK(near(skyrmion_at_scale(x, 1.0), hedgehog(x), 0.0));
        CHECK(near(skyrmion_at_scale(x, 2.0 * 0.5), hedgehog(x), 0.0));
    }
    for (double lam : {0.1, 1.0, 7.0}) CHECK(near(skyrmion_at_scale({lam, 0.0}, lam), Vec3(0, 1, 0), 1e-15));
    CHECK_THROWS_AS(skyrmion_at_scale({1, 1}, 0.0), InvalidInput);
    CHECK_THROWS_AS(skyrmion_at_scale({1, 1}, -2.0), InvalidInput);
}

TEST_CASE("profile identities at random radii") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const double rho = log_uniform(rng, 1e-3, 1e3);
        const double s = P::sin_theta(rho), c = P::cos_theta(rho);
        CHECK(std::abs(s * s + c * c - 1.0) < 1e-14);
        CHECK(std::abs(P::dtheta(rho) + s / rho) < 1e-10);
        CHECK(std::abs(s - rho * (1.0 - c)) < 1e-10);
        CHECK(std::abs(P::d2theta(rho) + P::dtheta(rho) / rho - s * c / (rho * rho)) <
              1e-10 * std::max(1.0, 1.0 / (rho * rho)));
        CHECK(std::abs(std::sin(P::theta(rho)) - s) < 1e-14);
    }
    CHECK(P::theta(1e-12) == doctest::Approx(std::numbers::pi));
    CHECK(std::abs(P::theta(1e12)) < 1e-11);
}

TEST_CASE("hedgehog has unit norm") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double scale = std::exp(3.0 * n01(rng));
        const Vec3 v = hedgehog({scale * n01(rng), scale * n01(rng)});
        CHECK(std::abs(v.norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("polar form agrees with the Cartesian formula") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const double rho = log_uniform(rng, 1e-3, 1e3), psi = ang(rng);
        CHECK(near(hedgehog_polar(rho, psi), hedgehog({rho * std::cos(psi), rho * std::sin(psi)}), 1e-14));
    }
}

TEST_CASE("moving frame") {
    const auto f = frame(1.0, 0.0);
    CHECK(near(f.j1, Vec3(1, 0, 0), 1e-15));
    CHECK(near(f.j2, Vec3(0, 0, -1), 1e-15));
    CHECK_THROWS_AS(frame(0.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(frame(-1.0, 1.0), InvalidInput);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    const double d = 1e-5;
    for (int i = 0; i < 500; ++i) {
        const double rho = log_uniform(rng, 1e-2, 1e2), psi = ang(rng);
        const auto fr = frame(rho, psi);
        const Vec3 h = hedgehog_polar(rho, psi);
        const double s = P::sin_theta(rho), c = P::cos_theta(rho);
        // orthonormal and tangent
        CHECK(std::abs(fr.j1.value().dot(fr.j2.value())) < 1e-14);
        CHECK(std::abs(fr.j1.value().dot(h)) < 1e-14);
        CHECK(std::abs(fr.j2.value().dot(h)) < 1e-14);

        const Vec3 dpsi_h = (hedgehog_polar(rho, psi + d) - hedgehog_polar(rho, psi - d)) / (2 * d);
        CHECK(near(dpsi_h, -s * fr.j1.value(), 1e-8));

        const double dr = d * rho;
        const Vec3 drho_j2 =
            (frame(rho + dr, psi).j2.value() - frame(rho - dr, psi).j2.value()) / (2 * dr);
        CHECK(near(drho_j2, -P::dtheta(rho) * h, 1e-8 * std::max(1.0, 1.0 / rho)));

        const Vec3 dpsi_j1 = (frame(rho, psi + d).j1.value() - frame(rho, psi - d).j1.value()) / (2 * d);
        CHECK(near(dpsi_j1, c * fr.j2.value() + s * h, 1e-8));
    }
}

TEST_CASE("analytic skyrmion gradient matches finite differences") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n01(0.0, 1.5);
    const double d = 1e-6;
    for (int i = 0; i < 200; ++i) {
        const double scale = std::exp(n01(rng) / 2.0);
        Point2 x{n01(rng), n01(rng)};
        const auto g = skyrmion_gradient(x, scale);
        const Vec3 f1 = (skyrmion_at_scale({x.x1 + d, x.x2}, scale).value() -
                         skyrmion_at_scale({x.x1 - d, x.x2}, scale).value()) / (2 * d);
        const Vec3 f2 = (skyrmion_at_scale({x.x1, x.x2 + d}, scale).value() -
                         skyrmion_at_scale({x.x1, x.x2 - d}, scale).value()) / (2 * d);
        CHECK(near(g[0], f1, 1e-7));
        CHECK(near(g[1], f2, 1e-7));
    }
}

TEST_CASE("helical strip") {
    CHECK(near(beltrami_strip({0.0, 3.0}, 2.0), Vec3(0, 0, -1), 1e-15));
    CHECK(near(beltrami_strip({1e8, 0.0}, 2.0), e3, 1e-7));
    CHECK(near(beltrami_strip({-1e8, 0.0}, 2.0), e3, 1e-7));
    CHECK_THROWS_AS(beltrami_strip({0, 0}, 0.0), InvalidInput);
    CHECK_THROWS_AS(beltrami_strip_dx1(1.0, -1.0), InvalidInput);

    // b(x1) is h at scale 1/r on the x1 axis
    for (double r : {0.5, 2.0})
        for (double x1 : {-3.0, -0.2, 0.7, 5.0})
            CHECK(near(beltrami_strip({x1, 0}, r), skyrmion_at_scale({x1, 0}, 1.0 / r), 1e-15));

    const double d = 1e-6;
    for (double r : {0.5, 1.0, 2.0})
        for (double x1 : {-2.0, -0.3, 0.0, 0.9, 4.0}) {
            const Vec3 fd = (beltrami_strip({x1 + d, 0}, r).value() - beltrami_strip({x1 - d, 0}, r).value()) / (2 * d);
            CHECK(near(beltrami_strip_dx1(x1, r), fd, 1e-8));
        }
}

TEST_CASE("stitched map") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> n01(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        Point2 x{n01(rng), n01(rng)};
        CHECK(near(stitched_map(x, 2.0, 0.0), skyrmion_at_scale(x, 0.5), 1e-15));
    }
    CHECK(near(stitched_map({0, 0}, 2.0, 1.0), Vec3(0, 0, -1), 1e-15));
    // continuity across |x2| = L
    for (double x1 : {-1.0, 0.3, 2.0}) {
        CHECK(near(stitched_map({x1, 3.0}, 2.0, 3.0), stitched_map({x1, 3.0 + 1e-12}, 2.0, 3.0), 1e-10));
        CHECK(near(stitched_map({x1, -3.0}, 2.0, 3.0), stitched_map({x1, -3.0 - 1e-12}, 2.0, 3.0), 1e-10));
    }
    CHECK_THROWS_AS(stitched_map({0, 0}, 0.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(stitched_map({0, 0}, 2.0, -1.0), InvalidInput);
}

TEST_CASE("sampled fields") {
    numerics::Grid2D g(4.0, 33);
    const auto c = constant_field(g);
    for (const auto& v : c.values()) CHECK(near(v, e3, 0.0));

    const auto h = sample_field([](Point2 x) { return hedgehog(x); }, g);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            CHECK(near(h[g.index(i, j)], hedgehog({g.x1(i), g.x2(j)}), 0.0));

    numerics::Grid2D big = numerics::Grid2D::rectangle(20.0, 101, 13.0, 131);
    const auto s = sample_field([](Point2 x) { return stitched_map(x, 2.0, 3.0); }, big);
    for (const auto& v : s.values()) CHECK(std::abs(v.norm() - 1.0) < 1e-12);

    CHECK_THROWS_AS(UnitVec3(1.0, 1.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(UnitVec3::normalized(Vec3::Zero()), InvalidInput);
    CHECK_THROWS_AS(sample_field([](Point2) { return UnitVec3(Vec3(0, 0, 2)); }, g), InvalidInput);
    CHECK_THROWS_AS(MagnetizationField(g, std::vector<Vec3>(g.size(), Vec3(0, 0.5, 0))), InvalidInput);
}
