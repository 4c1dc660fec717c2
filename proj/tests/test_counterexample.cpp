// Helical strip energy density, the slope of E_4[n_L] in L and the 2D sweep.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "skyrmion/counterexample.hpp"

using namespace skyrmion;
using namespace skyrmion::counterexample;

namespace {

constexpr double pi = std::numbers::pi;

// 2 int_R strip_density dx with x = tan(u)/r, midpoint rule in u.
double slope_oracle(double r) {
    const int n = 4000;
    const double du = pi / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = -0.5 * pi + (i + 0.5) * du;
        const double x = std::tan(u) / r;
        const double jac = 1.0 / (r * std::cos(u) * std::cos(u));
        sum += strip_density(x, r) * jac * du;
    }
    return 2.0 * sum;
}

SweepOptions quick(double r) {
    SweepOptions o;
    o.spacing = 0.1 / r;
    return o;
}

}  // namespace

TEST_CASE("strip density examples and the pointwise identity") {
    for (double r : {0.3, 1.0, 2.0, 5.0}) CHECK(strip_density(0.0, r) == doctest::Approx(2.0 * (1.0 - r * r)));
    for (double x : {-3.0, 0.0, 0.4, 100.0}) CHECK(strip_density(x, 1.0) == 0.0);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ux(-50.0, 50.0), ur(0.05, 6.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = ux(rng), r = ur(rng);
        CHECK(std::abs(strip_density_from_derivatives(x, r) - strip_density(x, r)) <= 1e-10);
    }
    CHECK_THROWS_AS(strip_density(1.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(strip_density_from_derivatives(1.0, -1.0), InvalidInput);
}

TEST_CASE("analytic slope") {
    CHECK(std::abs(analytic_slope(1.0)) < 1e-12);
    CHECK(analytic_slope(2.0) < 0.0);
    CHECK(std::abs(analytic_slope(2.0) - (-3.0 * pi)) < 1e-6);
    for (double r : {0.2, 0.5, 0.9, 1.1, 2.0, 4.0, 10.0}) {
        const double o = slope_oracle(r);
        CHECK(analytic_slope(r) == doctest::Approx(o).epsilon(1e-8));
        CHECK(analytic_slope_closed_form(r) == doctest::Approx(o).epsilon(1e-8));
        CHECK((analytic_slope(r) > 0.0) == (r < 1.0));
    }
    CHECK_THROWS_AS(analytic_slope(0.0), InvalidInput);
    CHECK_THROWS_AS(analytic_slope_closed_form(-2.0), InvalidInput);
}

TEST_CASE("energy of n_L is linear in L") {
    const double r = 2.0;
    const auto rep = stitched_energy_sweep(r, {2.0, 5.0, 10.0}, quick(r));
    CHECK(rep.slope < 0.0);
    CHECK(std::abs(rep.slope - rep.analytic_slope) <= 0.03 * std::abs(rep.analytic_slope));
    CHECK(rep.relative_residual < 1e-2);
    for (const auto& e : rep.energies) CHECK(std::abs(e.degree + 1.0) < 0.05);

    const auto tab = rep.table();
    CHECK(tab.columns() == std::vector<std::string>{"L", "dirichlet", "helicity", "potential", "total", "degree"});
    CHECK(tab.rows().size() == 3);
    const auto sum = rep.summary();
    for (const char* key : {"r", "slope", "intercept", "residual", "analytic_slope"}) CHECK(sum.contains(key));
}

TEST_CASE("zero-width strip is the translated skyrmion") {
    const double r = 2.0;
    const auto opt = quick(r);
    const auto rep = stitched_energy_sweep(r, {0.0}, opt);
    const double X1 = 40.0 / r, X2 = 20.0 / r, h = opt.spacing;
    const auto grid = numerics::Grid2D::rectangle(X1, static_cast<std::size_t>(std::ceil(2 * X1 / h)) + 1, X2,
                                                  static_cast<std::size_t>(std::ceil(2 * X2 / h)) + 1);
    const auto sk = maps::sample_field([r](maps::Point2 x) { return maps::skyrmion_at_scale(x, 1.0 / r); }, grid);
    const auto e = energy::total_energy(sk, r, 4.0, opt.quadrature);
    CHECK(rep.energies[0].total == doctest::Approx(e.total).epsilon(1e-12));
    // and close to the whole-plane value once the tail is included
    const auto et = energy::total_energy(sk, r, 4.0, {4, energy::TailModel::radial});
    CHECK(et.total == doctest::Approx(-4.0 * pi + 2.0 * pi / (r * r)).epsilon(1e-2));
}

namespace {

// Trapezoid rule for the strip density over [-X1, X1] on the sweep's x1 nodes.
double strip_line_integral(double r, double spacing) {
    const double X1 = 40.0 / r;
    const auto n1 = static_cast<std::size_t>(std::ceil(2.0 * X1 / spacing)) + 1;
    const double hx = 2.0 * X1 / static_cast<double>(n1 - 1);
    double line = 0.0;
    for (std::size_t i = 0; i < n1; ++i)
        line += (i == 0 || i + 1 == n1 ? 0.5 : 1.0) * hx * strip_density(-X1 + hx * static_cast<double>(i), r);
    return line;
}

}  // namespace

TEST_CASE("energy difference equals the strip integral") {
    // n_L is only Lipschitz across |x2| = L, so finite differences there leave
    // an O(h) offset in E[n_L] - E[n_0] that is the same for every L > 0
    const double r = 2.0;
    std::vector<double> offset;
    for (double spacing : {0.1 / r, 0.05 / r}) {
        SweepOptions opt;
        opt.spacing = spacing;
        const auto rep = stitched_energy_sweep(r, {0.0, 1.0, 3.0, 6.0}, opt);
        const double line = strip_line_integral(r, spacing);
        const double e0 = rep.energies[0].total;
        offset.push_back(std::abs(rep.energies[1].total - e0 - 2.0 * rep.L[1] * line));
        for (std::size_t i = 1; i < rep.L.size(); ++i) {
            const double strip = 2.0 * rep.L[i] * line;
            CHECK(std::abs(rep.energies[i].total - e0 - strip) <= 0.01 * std::abs(strip));
        }
        for (std::size_t i = 2; i < rep.L.size(); ++i) {
            const double strip = 2.0 * (rep.L[i] - rep.L[1]) * line;
            const double diff = rep.energies[i].total - rep.energies[1].total;
            CHECK(std::abs(diff - strip) <= 5e-4 * std::abs(strip));
        }

        // no curvature in L beyond the noise of the fit
        Eigen::MatrixXd V(3, 3);
        Eigen::VectorXd E(3);
        for (int i = 0; i < 3; ++i) {
            const double L = rep.L[static_cast<std::size_t>(i) + 1];
            V(i, 0) = 1.0;
            V(i, 1) = L;
            V(i, 2) = L * L;
            E(i) = rep.energies[static_cast<std::size_t>(i) + 1].total;
        }
        const Eigen::VectorXd c = V.fullPivLu().solve(E);
        CHECK(std::abs(c(2)) * 6.0 < 1e-3 * std::abs(c(1)));
    }
    CHECK(offset[0] / offset[1] > 1.7);
}

TEST_CASE("slope sign follows 1 - r^2") {
    for (double r : {0.5, 0.95, 1.05, 2.0, 4.0}) {
        const auto rep = stitched_energy_sweep(r, {2.0, 5.0}, quick(r));
        CHECK((rep.slope > 0.0) == (r < 1.0));
        CHECK(std::abs(rep.slope - rep.analytic_slope) <= 0.03 * std::abs(rep.analytic_slope));
    }
    const auto flat = stitched_energy_sweep(1.0, {2.0, 5.0}, quick(1.0));
    CHECK(std::abs(flat.slope) < 1e-3);
}

TEST_CASE("sweep input validation") {
    CHECK_THROWS_AS(stitched_energy_sweep(2.0, {}), InvalidInput);
    CHECK_THROWS_AS(stitched_energy_sweep(2.0, {5.0, 2.0}), InvalidInput);
    CHECK_THROWS_AS(stitched_energy_sweep(2.0, {2.0, 2.0}), InvalidInput);
    CHECK_THROWS_AS(stitched_energy_sweep(2.0, {-1.0}), InvalidInput);
    CHECK_THROWS_AS(stitched_energy_sweep(0.0, {1.0}), InvalidInput);
    SweepOptions small;
    small.half_width_x2 = 8.0;
    CHECK_THROWS_AS(stitched_energy_sweep(2.0, {2.0, 5.0}, small), InvalidInput);
}
