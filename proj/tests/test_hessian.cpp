// Mode forms, Fourier splitting of the frame form, the Cartesian form, the
// substitution identity and the radial eigenproblem.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skyrmion/hessian.hpp"
#include "skyrmion/samples.hpp"

using namespace skyrmion;
using namespace skyrmion::hessian;
using numerics::RadialFunction;
using numerics::RadialGrid;
using P = maps::SkyrmionProfile;

namespace {

constexpr double pi = std::numbers::pi;

// Closed-form bump in log rho with its exact derivative.
struct Bump {
    double lo, hi, amp;
    double u(double rho) const { return 2.0 * (std::log(rho / lo)) / std::log(hi / lo) - 1.0; }
    double operator()(double rho) const {
        const double t = u(rho);
        return std::abs(t) >= 1.0 ? 0.0 : amp * std::exp(1.0 - 1.0 / (1.0 - t * t));
    }
    double prime(double rho) const {
        const double t = u(rho);
        if (std::abs(t) >= 1.0) return 0.0;
        const double q = 1.0 - t * t;
        return (*this)(rho) * (-2.0 * t / (q * q)) * 2.0 / (std::log(hi / lo) * rho);
    }
};

// H_k^r[a, b] for closed-form a, b by a fine trapezoid rule in log rho,
// using exact derivatives.
double oracle_form(int k, double r, const Bump& a, const Bump& b) {
    const double s0 = std::log(std::min(a.lo, b.lo)), s1 = std::log(std::max(a.hi, b.hi));
    const int n = 20000;
    const double ds = (s1 - s0) / n;
    double sum = 0.0;
    for (int i = 1; i < n; ++i) {
        const double rho = std::exp(s0 + ds * i);
        const double st = P::sin_theta(rho), ct = P::cos_theta(rho), dt = P::dtheta(rho);
        const double U = k * k / (rho * rho) - dt * dt + ct * ct / (rho * rho) + 4.0 * r * r * st / rho;
        const double W = ct / (rho * rho) - 2.0 * r * r * st / rho;
        const double av = a(rho), bv = b(rho);
        const double dens = a.prime(rho) * a.prime(rho) + b.prime(rho) * b.prime(rho) +
                            U * (av * av + bv * bv) + 4.0 * k * W * av * bv;
        sum += dens * rho * rho * ds;
    }
    return sum;
}

RadialFunction sample(const RadialGrid& g, const Bump& b) {
    return RadialFunction::from(g, [&](double rho) { return b(rho); });
}

}  // namespace

TEST_CASE("mode form basics") {
    RadialGrid g(1e-3, 1e3, 1201);
    const auto z = RadialFunction::zero(g);
    CHECK(mode_form_value(ModeForm(3, 1.2), z, z) == 0.0);
    CHECK_THROWS_AS(mode_form_value(ModeForm(3, 1.2), z, RadialFunction::zero(RadialGrid(1e-3, 1e3, 1200))),
                    InvalidInput);
    CHECK_THROWS_AS(ModeForm(-1, 1.0), InvalidInput);
    CHECK_THROWS_AS(ModeForm(1, -0.5), InvalidInput);
    CHECK_NOTHROW(ModeForm(0, 0.0));
}

TEST_CASE("mode form agrees with an exact-derivative oracle") {
    RadialGrid g(1e-3, 1e3, 4801);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        const double lo1 = std::exp(-3.0 + 3.0 * u(rng)), lo2 = std::exp(-3.0 + 3.0 * u(rng));
        const Bump a{lo1, lo1 * std::exp(1.0 + 3.0 * u(rng)), 2.0 * u(rng) - 1.0};
        const Bump b{lo2, lo2 * std::exp(1.0 + 3.0 * u(rng)), 2.0 * u(rng) - 1.0};
        const int k = trial % 5;
        const double r = 2.0 * u(rng);
        const double v = mode_form_value(ModeForm(k, r), sample(g, a), sample(g, b));
        const double o = oracle_form(k, r, a, b);
        CHECK(std::abs(v - o) <= 1e-6 * (1.0 + std::abs(o)));
    }
}

TEST_CASE("modes 0 and 1 are nonnegative") {
    RadialGrid g(1e-3, 1e3, 1201);
    std::mt19937_64 rng(2718);
    for (double r : {0.3, 1.0, 3.0}) {
        for (int k : {0, 1}) {
            for (int trial = 0; trial < 50; ++trial) {
                const auto a = samples::random_bump(g, rng, 1e-2, 1e2);
                const auto b = samples::random_bump(g, rng, 1e-2, 1e2);
                const double scale = mode_form_value(ModeForm(k, 0.0), a, a) + mode_form_value(ModeForm(k, 0.0), b, b);
                CHECK(mode_form_value(ModeForm(k, r), a, b) >= -1e-8 * std::abs(scale));
            }
        }
    }
}

TEST_CASE("mode 1 at r = 0 on the kernel direction times a bump") {
    RadialGrid g(1e-3, 1e3, 2401);
    const auto psi = RadialFunction::from(g, [](double rho) { return P::sin_theta(rho) / rho; });
    const auto eta = samples::bump(g, 0.3, 5.0);
    const auto alpha = psi * eta;
    const double v = mode_form_value(ModeForm(1, 0.0), alpha, alpha);
    // with alpha = beta = (sin th/rho) eta the form reduces to
    // int 2 (sin th/rho)^2 (eta')^2 rho drho
    const auto deta = numerics::central_diff(eta, 4);
    const double reduced = integrate_radial(psi * psi * deta * deta, 1.0) * 2.0;
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(reduced).epsilon(1e-5));
}

TEST_CASE("mode form symmetry and dependence on r") {
    RadialGrid g(1e-3, 1e3, 1201);
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = samples::random_bump(g, rng, 1e-2, 1e2);
        const auto b = samples::random_bump(g, rng, 1e-2, 1e2);
        const int k = 2 + trial % 4;
        const double r = 0.1 + 0.2 * trial;
        const double ab = mode_form_value(ModeForm(k, r), a, b);
        const double ba = mode_form_value(ModeForm(k, r), b, a);
        CHECK(std::abs(ab - ba) <= 1e-12 * (1.0 + std::abs(ab)));

        // affine in r^2 with slope 8 (1 - k) int sin th alpha^2 drho
        const auto st = RadialFunction::from(g, [](double rho) { return P::sin_theta(rho); });
        const double slope = 8.0 * (1 - k) * integrate_radial(st * a * a, 0.0);
        const double h0 = mode_form_value(ModeForm(k, 0.0), a, a);
        const double h1 = mode_form_value(ModeForm(k, r), a, a);
        const double h2 = mode_form_value(ModeForm(k, 2.0 * r), a, a);
        CHECK(slope <= 0.0);
        CHECK((h1 - h0) / (r * r) == doctest::Approx(slope).epsilon(1e-9));
        CHECK((h2 - h0) / (4.0 * r * r) == doctest::Approx(slope).epsilon(1e-9));
    }
}

TEST_CASE("Fourier splitting of the frame form") {
    RadialGrid g(1e-3, 1e3, 1201);

    ModalField empty(g);
    const auto zs = mode_split_check(empty, 1.0);
    CHECK(zs.full == 0.0);
    CHECK(zs.split == 0.0);

    // single mode 3 with (a1, b2) = (alpha, beta)
    std::mt19937_64 rng(9);
    const auto alpha = samples::random_bump(g, rng, 1e-1, 1e1);
    const auto beta = samples::random_bump(g, rng, 1e-1, 1e1);
    const auto z = RadialFunction::zero(g);
    ModalField single(g);
    single.add(3, alpha, z, z, beta);
    for (double r : {0.5, 1.5}) {
        const auto sc = mode_split_check(single, r);
        const double direct = pi * mode_form_value(ModeForm(3, r), alpha, beta);
        CHECK(std::abs(sc.full - direct) <= 1e-6 * (1.0 + std::abs(direct)));
    }

    // random finite-mode fields
    std::uniform_real_distribution<double> ur(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> modes{0, 1, 2};
        if (trial % 3 == 1) modes = {1, 3, 5};
        if (trial % 3 == 2) modes = {0, 4};
        const auto field = samples::random_modal_field(g, modes, rng, 1e-2, 1e2);
        const auto sc = mode_split_check(field, ur(rng));
        CHECK(std::abs(sc.full - sc.split) / (1.0 + std::abs(sc.full)) < 1e-6);
    }
}

TEST_CASE("modal field container") {
    RadialGrid g(1e-2, 1e2, 101);
    const auto one = RadialFunction::from(g, [](double) { return 1.0; });
    const auto z = RadialFunction::zero(g);
    ModalField f(g);
    f.add(0, one, z, z, z).add(2, z, one, one, z);
    CHECK(f.max_mode() == 2);
    CHECK_THROWS_AS(f.add(2, z, z, z, z), InvalidInput);
    CHECK_THROWS_AS(f.add(3, RadialFunction::zero(RadialGrid(1e-2, 1e2, 99)), z, z, z), InvalidInput);
    const auto [u1, u2] = f.evaluate(1.0, 0.3);
    CHECK(u1 == doctest::Approx(1.0 + std::sin(0.6)));
    CHECK(u2 == doctest::Approx(std::cos(0.6)));
}

TEST_CASE("Cartesian form agrees with the frame form") {
    // coefficients supported in [0.4, 3]: the Cartesian grid resolves them
    RadialGrid g(1e-2, 1e2, 1201);
    std::mt19937_64 rng(123);
    const numerics::Grid2D grid(4.0, 801);
    for (int trial = 0; trial < 3; ++trial) {
        const auto field = samples::random_modal_field(g, {0, 1, 2, 3}, rng, 0.4, 3.0);
        const double r = 0.4 + 0.5 * trial;
        const auto phi = modal_to_cartesian(field, grid);
        const auto h = maps::sample_field([](maps::Point2 x) { return maps::hedgehog(x); }, grid);
        CHECK(phi.max_normal_component(h) < 1e-10);
        const double cart = rescaled_hessian_cartesian(phi, r);
        const double frame = rescaled_hessian_frame(sample_polar(field, 0), r);
        CHECK(std::abs(cart - frame) <= 1e-3 * std::abs(frame));
    }

    const auto zero = energy::TangentField2D::zero(grid);
    CHECK(rescaled_hessian_cartesian(zero, 1.0) == 0.0);
    CHECK_THROWS_AS(modal_to_cartesian(ModalField(g), grid, 0.0), InvalidInput);
}

TEST_CASE("substitution identity") {
    RadialGrid g(1e-2, 1e2, 2001);
    // psi = 1, V = 0, A = rho: both sides equal int rho (g')^2
    const auto A = RadialFunction::from(g, [](double rho) { return rho; });
    const auto one = RadialFunction::from(g, [](double) { return 1.0; });
    const auto bump = samples::bump(g, 0.5, 8.0);
    const auto c = substitution_identity_check(A, RadialFunction::zero(g), one, bump);
    const auto db = numerics::central_diff(bump, 4);
    const double expect = integrate_radial(A * db * db, 0.0);
    CHECK(c.lhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(c.rhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(c.kernel_term) < 1e-14);

    // kernel direction of the mode-1 operator at r = 0
    RadialGrid wide(1e-4, 1e4, 4001);
    const auto Aw = RadialFunction::from(wide, [](double rho) { return rho; });
    const auto V = RadialFunction::from(wide, [](double rho) {
        const double c1 = 1.0 + P::cos_theta(rho);
        return c1 * c1 / rho - rho * P::dtheta(rho) * P::dtheta(rho);
    });
    const auto psi = RadialFunction::from(wide, [](double rho) { return P::sin_theta(rho) / rho; });
    const auto gw = samples::bump(wide, 0.1, 20.0);
    const auto k = substitution_identity_check(Aw, V, psi, gw);
    CHECK(std::abs(k.kernel_term) < 1e-8 * std::max(1.0, std::abs(k.gradient_term)));

    // random smooth tuples
    std::mt19937_64 rng(8080);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a0 = 0.5 + u(rng), a1 = u(rng), v0 = 2.0 * u(rng) - 1.0, p0 = 0.3 + u(rng), p1 = u(rng);
        const auto Ar = RadialFunction::from(g, [&](double rho) { return rho * (a0 + a1 * std::sin(std::log(rho))); });
        const auto Vr = RadialFunction::from(g, [&](double rho) { return v0 * rho / (1.0 + rho * rho); });
        const auto pr = RadialFunction::from(g, [&](double rho) { return p0 + p1 / (1.0 + rho); });
        const auto gr = samples::random_bump(g, rng, 5e-2, 2e1);
        const auto s = substitution_identity_check(Ar, Vr, pr, gr);
        CHECK(std::abs(s.lhs - s.rhs) < 1e-6 * (1.0 + std::abs(s.lhs)));
    }

    auto neg = one * -1.0;
    CHECK_THROWS_AS(substitution_identity_check(A, RadialFunction::zero(g), neg, bump), InvalidInput);
    CHECK_THROWS_AS(substitution_identity_check(A, RadialFunction::zero(g), RadialFunction::zero(g), bump),
                    InvalidInput);
    CHECK_THROWS_AS(substitution_identity_check(Aw, V, psi, bump), InvalidInput);
}

TEST_CASE("radial eigenproblem") {
    const auto grid = default_eigen_grid();
    CHECK(min_mode_eigenvalue(ModeForm(1, 0.0), grid, false) >= -1e-6);
    CHECK(min_mode_eigenvalue(ModeForm(3, 1.5), grid, true) < 0.0);
    CHECK(min_mode_eigenvalue(ModeForm(3, 0.5), grid, true) >= -1e-6);
    CHECK(min_mode_eigenvalue(ModeForm(0, 2.0), grid, false) >= -1e-6);

    for (double r : {0.5, 0.9, 1.1, 1.5, 3.0})
        for (int k : {1, 2, 3, 4}) {
            const double e = min_mode_eigenvalue(ModeForm(k, r), grid, false);
            CHECK(mode_has_negative_direction(ModeForm(k, r), grid, false) == (e < 0.0));
            // the full problem is never above the symmetric branch
            CHECK(e <= min_mode_eigenvalue(ModeForm(k, r), grid, true) + 1e-12);
        }

    // the eigenvector is a negative direction of the continuous form too
    const auto ep = min_mode_eigenpair(ModeForm(3, 1.5), grid, true);
    CHECK(mode_form_value(ModeForm(3, 1.5), ep.alpha, ep.beta) < 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(ep.alpha[i] == ep.beta[i]);
    CHECK(ep.alpha[0] == 0.0);
    CHECK(ep.alpha[grid.size() - 1] == 0.0);

    ModeReport rep{3, 1.5, -1.0, ep.eigenvalue, grid};
    const auto rec = rep.to_record();
    for (const char* key : {"k", "r", "value", "min_eig", "n", "rho_min", "rho_max"}) CHECK(rec.contains(key));
    CHECK(rec.number("n") == 3000.0);
    CHECK_THROWS_AS(min_mode_eigenvalue(ModeForm(1, 1.0), RadialGrid(1.0, 2.0, 4), false), InvalidInput);
}
