#include "skyrmion/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace skyrmion::energy {

namespace {

constexpr double pi = std::numbers::pi;

Vec3 curl(const Vec3& d1, const Vec3& d2) {
    return {d2[2], -d1[2], d1[1] - d2[0]};
}

struct Gradient {
    std::vector<Vec3> d1;
    std::vector<Vec3> d2;
};

template <class V>
Gradient gradient(const Grid2D& grid, const V& values, int order) {
    std::span<const Vec3> s(values.data(), values.size());
    return {numerics::central_diff<Vec3>(grid, s, numerics::Axis::x1, order),
            numerics::central_diff<Vec3>(grid, s, numerics::Axis::x2, order)};
}

double trapezoid_line(const std::vector<double>& f, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += (i == 0 || i + 1 == f.size()) ? 0.5 * f[i] : f[i];
    return s * h;
}

void require_positive_r(double r, const char* who) {
    require(std::isfinite(r) && r > 0.0, std::string(who) + ": r must be positive");
}

}  // namespace

Integral integrate_with_tail(const Grid2D& grid, std::span<const double> density, TailModel tail) {
    Integral out;
    out.interior = numerics::integrate_grid2d(grid, density);
    if (tail == TailModel::none) return out;
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    std::vector<double> line(ny);
    double side_x1 = 0.0;
    for (std::size_t i : {std::size_t{0}, nx - 1}) {
        for (std::size_t j = 0; j < ny; ++j) line[j] = density[grid.index(i, j)];
        side_x1 += trapezoid_line(line, grid.hy());
    }
    line.assign(nx, 0.0);
    double side_x2 = 0.0;
    for (std::size_t j : {std::size_t{0}, ny - 1}) {
        for (std::size_t i = 0; i < nx; ++i) line[i] = density[grid.index(i, j)];
        side_x2 += trapezoid_line(line, grid.hx());
    }
    out.tail = 0.5 * (grid.half_width_x1() * side_x1 + grid.half_width_x2() * side_x2);
    return out;
}

double EnergyBreakdown::degree_defect() const { return std::abs(degree - std::round(degree)); }

io::Record EnergyBreakdown::to_record() const {
    io::Record rec;
    rec.set("dirichlet", dirichlet)
        .set("helicity", helicity)
        .set("potential", potential)
        .set("total", total)
        .set("degree", degree)
        .set("r", r)
        .set("p", p)
        .set("grid_x", grid_x)
        .set("grid_n", grid_n)
        .set("tail_estimate", tail_estimate);
    return rec;
}

TangentField2D::TangentField2D(Grid2D grid, std::vector<Vec3> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    require(values_.size() == grid_.size(), "TangentField2D: value count must match grid");
    for (const Vec3& v : values_)
        require(v.allFinite(), "TangentField2D: non-finite component");
}

TangentField2D TangentField2D::project_onto_tangent(const MagnetizationField& base,
                                                    std::vector<Vec3> values) {
    require(values.size() == base.size(), "project_onto_tangent: size mismatch");
    for (std::size_t k = 0; k < values.size(); ++k) values[k] -= values[k].dot(base[k]) * base[k];
    return {base.grid(), std::move(values)};
}

TangentField2D TangentField2D::zero(const Grid2D& grid) {
    return {grid, std::vector<Vec3>(grid.size(), Vec3::Zero())};
}

double TangentField2D::max_normal_component(const MagnetizationField& base) const {
    require(base.grid() == grid_, "TangentField2D: base lives on a different grid");
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        m = std::max(m, std::abs(values_[k].dot(base[k])));
    return m;
}

bool TangentField2D::tangent_at(const MagnetizationField& base, double tol) const {
    return max_normal_component(base) < tol;
}

TangentField2D TangentField2D::operator*(double s) const {
    std::vector<Vec3> v(values_);
    for (auto& x : v) x *= s;
    return {grid_, std::move(v)};
}

TangentField2D difference(const MagnetizationField& n, const MagnetizationField& base) {
    require(n.grid() == base.grid(), "difference: fields live on different grids");
    std::vector<Vec3> v(n.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = n[k] - base[k];
    return {n.grid(), std::move(v)};
}

double dirichlet(const MagnetizationField& field, const QuadratureOptions& opt) {
    const auto g = gradient(field.grid(), field.values(), opt.diff_order);
    std::vector<double> dens(field.size());
    for (std::size_t k = 0; k < dens.size(); ++k)
        dens[k] = 0.5 * (g.d1[k].squaredNorm() + g.d2[k].squaredNorm());
    return integrate_with_tail(field.grid(), dens, opt.tail).value();
}

double helicity(const MagnetizationField& field, const QuadratureOptions& opt) {
    const auto g = gradient(field.grid(), field.values(), opt.diff_order);
    std::vector<double> dens(field.size());
    for (std::size_t k = 0; k < dens.size(); ++k)
        dens[k] = (field[k] - maps::e3).dot(curl(g.d1[k], g.d2[k]));
    return integrate_with_tail(field.grid(), dens, opt.tail).value();
}

namespace {

double potential_density(const Vec3& n, double p) {
    if (p == 4.0) {
        const double a = 1.0 - n[2];
        return 0.5 * a * a;
    }
    // |n - e3|^2 = 2 (1 - n3) for unit n
    const double d2 = std::max(0.0, 2.0 * (1.0 - n[2]));
    return std::pow(d2, 0.5 * p) / std::pow(2.0, p - 1.0);
}

}  // namespace

double potential(const MagnetizationField& field, double p, const QuadratureOptions& opt) {
    require(std::isfinite(p) && p >= 2.0, "potential: exponent p must be >= 2");
    std::vector<double> dens(field.size());
    for (std::size_t k = 0; k < dens.size(); ++k) dens[k] = potential_density(field[k], p);
    return integrate_with_tail(field.grid(), dens, opt.tail).value();
}

double degree(const MagnetizationField& field, const QuadratureOptions& opt) {
    const auto g = gradient(field.grid(), field.values(), opt.diff_order);
    std::vector<double> dens(field.size());
    for (std::size_t k = 0; k < dens.size(); ++k)
        dens[k] = field[k].dot(g.d1[k].cross(g.d2[k])) / (4.0 * pi);
    return integrate_with_tail(field.grid(), dens, opt.tail).value();
}

EnergyBreakdown total_energy(const MagnetizationField& field, double r, double p,
                             const QuadratureOptions& opt) {
    require_positive_r(r, "total_energy");
    require(std::isfinite(p) && p >= 2.0, "total_energy: exponent p must be >= 2");
    const auto& grid = field.grid();
    const auto g = gradient(grid, field.values(), opt.diff_order);
    const std::size_t n = field.size();
    std::vector<double> d(n), h(n), v(n), q(n);
    for (std::size_t k = 0; k < n; ++k) {
        d[k] = 0.5 * (g.d1[k].squaredNorm() + g.d2[k].squaredNorm());
        h[k] = (field[k] - maps::e3).dot(curl(g.d1[k], g.d2[k]));
        v[k] = potential_density(field[k], p);
        q[k] = field[k].dot(g.d1[k].cross(g.d2[k])) / (4.0 * pi);
    }
    const Integral id = integrate_with_tail(grid, d, opt.tail);
    const Integral ih = integrate_with_tail(grid, h, opt.tail);
    const Integral iv = integrate_with_tail(grid, v, opt.tail);
    const Integral iq = integrate_with_tail(grid, q, opt.tail);
    EnergyBreakdown e;
    e.dirichlet = id.value();
    e.helicity = ih.value();
    e.potential = iv.value();
    e.r = r;
    e.p = p;
    e.total = e.dirichlet + r * e.helicity + e.potential;
    e.degree = iq.value();
    e.tail_estimate = id.tail + r * ih.tail + iv.tail;
    e.grid_x = grid.half_width();
    e.grid_n = grid.nx();
    return e;
}

std::vector<double> lagrange_multiplier(const MagnetizationField& field, double r,
                                        int diff_order) {
    const auto g = gradient(field.grid(), field.values(), diff_order);
    std::vector<double> lam(field.size());
    for (std::size_t k = 0; k < lam.size(); ++k) {
        const Vec3& n = field[k];
        lam[k] = g.d1[k].squaredNorm() + g.d2[k].squaredNorm() +
                 2.0 * r * n.dot(curl(g.d1[k], g.d2[k])) - (1.0 - n[2]) * n[2];
    }
    return lam;
}

ResidualReport el_residual(const MagnetizationField& field, double r) {
    require_positive_r(r, "el_residual");
    const auto& grid = field.grid();
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    const double hx = grid.hx();
    const double hy = grid.hy();
    ResidualReport rep;
    rep.residual.assign(field.size(), Vec3::Zero());
    double sum2 = 0.0;
    for (std::size_t j = 1; j + 1 < ny; ++j) {
        for (std::size_t i = 1; i + 1 < nx; ++i) {
            const std::size_t k = grid.index(i, j);
            const Vec3& n = field[k];
            const Vec3& e = field[grid.index(i + 1, j)];
            const Vec3& w = field[grid.index(i - 1, j)];
            const Vec3& no = field[grid.index(i, j + 1)];
            const Vec3& so = field[grid.index(i, j - 1)];
            const Vec3 d1 = (e - w) / (2.0 * hx);
            const Vec3 d2 = (no - so) / (2.0 * hy);
            const Vec3 lap = (e - 2.0 * n + w) / (hx * hx) + (no - 2.0 * n + so) / (hy * hy);
            const Vec3 c = curl(d1, d2);
            const double lam = d1.squaredNorm() + d2.squaredNorm() + 2.0 * r * n.dot(c) -
                               (1.0 - n[2]) * n[2];
            const Vec3 res = -lap + 2.0 * r * c - (1.0 - n[2]) * maps::e3 - lam * n;
            rep.residual[k] = res;
            rep.sup_norm = std::max(rep.sup_norm, res.norm());
            sum2 += res.squaredNorm();
        }
    }
    rep.l2_norm = std::sqrt(sum2 * hx * hy);
    return rep;
}

FactorizationSides factorization_sides(const MagnetizationField& field, double r,
                                       const QuadratureOptions& opt) {
    require_positive_r(r, "factorization_sides");
    const auto& grid = field.grid();
    const auto g = gradient(grid, field.values(), opt.diff_order);
    const Vec3 e1(1.0, 0.0, 0.0);
    const Vec3 e2(0.0, 1.0, 0.0);
    std::vector<double> sq(field.size()), dens(field.size());
    FactorizationSides out;
    for (std::size_t k = 0; k < sq.size(); ++k) {
        const Vec3& n = field[k];
        const Vec3 D1 = g.d1[k] - e1.cross(n) / r;
        const Vec3 D2 = g.d2[k] - e2.cross(n) / r;
        const Vec3 w = D1 + n.cross(D2);
        sq[k] = w.squaredNorm();
        dens[k] = 0.5 * (g.d1[k].squaredNorm() + g.d2[k].squaredNorm());
        out.helical_sup = std::max(out.helical_sup, w.norm());
    }
    out.helical_square = integrate_with_tail(grid, sq, opt.tail).value();
    const double d = integrate_with_tail(grid, dens, opt.tail).value();
    out.rhs = 0.5 * r * r * out.helical_square + (1.0 - r * r) * d;
    const EnergyBreakdown e = total_energy(field, r, 4.0, opt);
    out.lhs = e.total - 4.0 * pi * r * r * e.degree;
    return out;
}

MagnetizationField perturb_field(const MagnetizationField& base, const TangentField2D& phi,
                                 double t) {
    require(std::isfinite(t), "perturb_field: t must be finite");
    require(phi.grid() == base.grid(), "perturb_field: phi lives on a different grid");
    for (std::size_t k = 0; k < base.size(); ++k)
        require(std::abs(phi[k].dot(base[k])) <= 1e-10 * std::max(1.0, phi[k].norm()),
                "perturb_field: phi is not tangent to the base field");
    if (t == 0.0) return base;
    std::vector<Vec3> v(base.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = (base[k] + t * phi[k]).normalized();
    return {base.grid(), std::move(v)};
}

double hessian_form_2d(const TangentField2D& xi, double r, const MagnetizationField& base,
                       const QuadratureOptions& opt) {
    require(std::isfinite(r) && r >= 0.0, "hessian_form_2d: r must be >= 0");
    require(xi.grid() == base.grid(), "hessian_form_2d: xi and base live on different grids");
    const auto& grid = base.grid();
    const auto g = gradient(grid, xi.values(), opt.diff_order);
    const auto lam = lagrange_multiplier(base, r, opt.diff_order);
    std::vector<double> dens(xi.size());
    for (std::size_t k = 0; k < dens.size(); ++k) {
        const Vec3& x = xi[k];
        dens[k] = g.d1[k].squaredNorm() + g.d2[k].squaredNorm() +
                  2.0 * r * curl(g.d1[k], g.d2[k]).dot(x) + x[2] * x[2] - lam[k] * x.squaredNorm();
    }
    return integrate_with_tail(grid, dens, opt.tail).value();
}

}  // namespace skyrmion::energy
