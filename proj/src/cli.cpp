#include "skyrmion/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "skyrmion/counterexample.hpp"
#include "skyrmion/energy.hpp"
#include "skyrmion/hessian.hpp"
#include "skyrmion/instability.hpp"
#include "skyrmion/io.hpp"
#include "skyrmion/samples.hpp"

namespace skyrmion::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string field = "skyrmion";
    std::string file;
    double r = 0.5;
    double p = 4.0;
    std::string k_spec = "3";
    std::optional<double> scale;
    double L = 0.0;
    std::optional<double> X;
    std::size_t n_per_side = 801;
    std::string tail = "radial";
    double rho_min = 1e-4;
    double rho_max = 1e4;
    std::size_t n_radial = 3000;
    bool n_radial_set = false;
    std::string spacing_mode = "geometric";
    bool full = false;
    std::vector<double> A_list{10.0, 100.0, 1000.0, 10000.0};
    std::vector<double> lambda_list{1.0, 0.1, 0.01, 0.001};
    std::vector<double> L_list{2.0, 5.0, 10.0};
    double r_lo = 0.1;
    double r_hi = 10.0;
    double tol = 1e-3;
    double grid_spacing = 0.0;
    std::vector<std::string> checks;
    std::vector<std::string> expect_fail;
    std::string out_path;
    std::string format = "record";
    std::uint64_t seed = 42;
};

/// Parsed "3" or "2..6".
std::vector<int> parse_k(const std::string& spec) {
    const auto dots = spec.find("..");
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == s.size() && !s.empty(), "invalid --k value '" + spec + "'");
        return v;
    };
    std::vector<int> ks;
    if (dots == std::string::npos) {
        ks.push_back(to_int(spec));
    } else {
        const int a = to_int(spec.substr(0, dots));
        const int b = to_int(spec.substr(dots + 2));
        require(a <= b, "invalid --k range '" + spec + "'");
        for (int k = a; k <= b; ++k) ks.push_back(k);
    }
    for (int k : ks) require(k >= 0 && k <= 64, "--k out of range [0, 64]");
    return ks;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + io::format_number(v[i]);
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

numerics::RadialGrid radial_grid(const RunConfig& c) {
    require(c.spacing_mode == "geometric" || c.spacing_mode == "uniform",
            "--spacing must be geometric or uniform");
    return {c.rho_min, c.rho_max, c.n_radial,
            c.spacing_mode == "geometric" ? numerics::Spacing::geometric : numerics::Spacing::uniform};
}

energy::TailModel tail_model(const RunConfig& c) {
    require(c.tail == "radial" || c.tail == "none", "--tail must be radial or none");
    return c.tail == "radial" ? energy::TailModel::radial : energy::TailModel::none;
}

// Everything the result depends on, for the config.* keys.
io::Record config_record(const RunConfig& c) {
    io::Record rec;
    rec.set("command", c.command).set("seed", static_cast<long long>(c.seed)).set("format", c.format);
    const std::string& cmd = c.command;
    if (cmd == "energy") {
        rec.set("field", c.field).set("r", c.r).set("p", c.p).set("tail", c.tail);
        if (c.field == "file") rec.set("file", c.file);
        if (c.field == "skyrmion") rec.set("scale", c.scale.value_or(1.0));
        if (c.field == "stitched") rec.set("L", c.L);
        if (c.X) rec.set("X", *c.X);
        rec.set("n_per_side", c.n_per_side);
    } else if (cmd == "verify") {
        rec.set("r", c.r).set("scale", c.scale.value_or(2.0 * c.r));
        rec.set("checks", join(c.checks)).set("expect_fail", join(c.expect_fail));
        rec.set("A", join(c.A_list));
    } else if (cmd == "hessian-mode" || cmd == "threshold") {
        rec.set("k", c.k_spec).set("full", c.full);
        if (cmd == "hessian-mode")
            rec.set("r", c.r);
        else
            rec.set("r_lo", c.r_lo).set("r_hi", c.r_hi).set("tol", c.tol);
        rec.set("rho_min", c.rho_min).set("rho_max", c.rho_max).set("n_radial", c.n_radial);
        rec.set("spacing", c.spacing_mode);
    } else if (cmd == "instability-witness") {
        rec.set("k", c.k_spec).set("r", c.r).set("A", join(c.A_list)).set("lambda", join(c.lambda_list));
    } else if (cmd == "counterexample") {
        rec.set("r", c.r).set("L", join(c.L_list)).set("grid_spacing", c.grid_spacing);
    } else if (cmd == "hardy") {
        rec.set("A", join(c.A_list)).set("n_radial", c.n_radial);
    }
    return rec;
}

// Writes a result either to --out or to the given stream.
class Emitter {
public:
    Emitter(const RunConfig& c, std::ostream& out) : cfg_(c), out_(out) {
        require(c.format == "record" || c.format == "table", "--format must be table or record");
    }

    void record(const io::Record& result) {
        io::Record rec;
        rec.merge(config_record(cfg_), "config");
        rec.merge(result);
        rec.write(stream());
    }

    void table(const io::Table& t, const io::Record& summary) {
        std::ostream& os = stream();
        const io::Record config = config_record(cfg_);
        for (const auto& [k, v] : config.entries()) os << "# config." << k << '=' << v << '\n';
        for (const auto& [k, v] : summary.entries()) os << "# " << k << '=' << v << '\n';
        t.write(os);
    }

    void flush() {
        if (!cfg_.out_path.empty()) {
            std::ofstream f(cfg_.out_path);
            require(static_cast<bool>(f), "cannot open output file '" + cfg_.out_path + "'");
            f << buffer_.str();
            require(static_cast<bool>(f), "failed writing '" + cfg_.out_path + "'");
        } else {
            out_ << buffer_.str();
        }
    }

    /// Secondary output next to --out (path + suffix), or inline otherwise.
    void side_file(const std::string& suffix, const std::string& content) {
        if (cfg_.out_path.empty()) {
            buffer_ << content;
            return;
        }
        std::ofstream f(cfg_.out_path + suffix);
        require(static_cast<bool>(f), "cannot open output file '" + cfg_.out_path + suffix + "'");
        f << content;
    }

private:
    std::ostream& stream() { return buffer_; }

    const RunConfig& cfg_;
    std::ostream& out_;
    std::ostringstream buffer_;
};

// ---------------------------------------------------------------- energy

maps::MagnetizationField energy_field(const RunConfig& c) {
    if (c.field == "file") {
        require(!c.file.empty(), "--field file needs --file <path>");
        std::ifstream f(c.file);
        require(static_cast<bool>(f), "cannot open field file '" + c.file + "'");
        return io::read_field(f);
    }
    require(c.n_per_side >= 3, "--n must be >= 3");
    if (c.field == "skyrmion") {
        const double s = c.scale.value_or(1.0);
        require(s > 0.0, "--scale must be positive");
        const numerics::Grid2D grid(c.X.value_or(40.0 * s), c.n_per_side);
        return maps::sample_field([s](maps::Point2 x) { return maps::skyrmion_at_scale(x, s); }, grid);
    }
    if (c.field == "constant-e3") {
        return maps::constant_field(numerics::Grid2D(c.X.value_or(40.0), c.n_per_side));
    }
    if (c.field == "stitched") {
        require(c.r > 0.0, "--r must be positive");
        require(c.L >= 0.0, "--L must be >= 0");
        const double X1 = 40.0 / c.r;
        const double X2 = c.X.value_or(c.L + 20.0 / c.r);
        require(X2 > c.L, "--X must exceed L for the stitched field");
        const double h = 2.0 * X1 / static_cast<double>(c.n_per_side - 1);
        const auto n2 = static_cast<std::size_t>(std::ceil(2.0 * X2 / h)) + 1;
        const auto grid = numerics::Grid2D::rectangle(X1, c.n_per_side, X2, n2);
        return maps::sample_field([&](maps::Point2 x) { return maps::stitched_map(x, c.r, c.L); }, grid);
    }
    throw InvalidInput("unknown --field '" + c.field + "' (skyrmion, constant-e3, stitched, file)");
}

int cmd_energy(const RunConfig& c, std::ostream& out) {
    Emitter em(c, out);
    const auto field = energy_field(c);
    const energy::QuadratureOptions q{4, tail_model(c)};
    const auto e = energy::total_energy(field, c.r, c.p, q);
    io::Record rec = e.to_record();
    if (c.format == "table") {
        io::Table t({"dirichlet", "helicity", "potential", "total", "degree", "tail_estimate"});
        t.add_row({e.dirichlet, e.helicity, e.potential, e.total, e.degree, e.tail_estimate});
        em.table(t, io::Record().set("r", e.r).set("p", e.p).set("grid_x", e.grid_x).set("grid_n", e.grid_n));
    } else {
        em.record(rec);
    }
    em.flush();
    return ok;
}

// ---------------------------------------------------------------- verify

struct CheckResult {
    std::string name;
    double measured;
    double tolerance;
    bool passed;
    std::string detail;
};

using Check = std::function<CheckResult(const RunConfig&)>;

CheckResult check_profile(const RunConfig& c) {
    using maps::SkyrmionProfile;
    samples::Rng rng(c.seed);
    std::uniform_real_distribution<double> u(std::log(1e-3), std::log(1e3));
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double rho = std::exp(u(rng));
        const double s = SkyrmionProfile::sin_theta(rho);
        const double co = SkyrmionProfile::cos_theta(rho);
        const double d = SkyrmionProfile::dtheta(rho);
        const double d2 = SkyrmionProfile::d2theta(rho);
        worst = std::max({worst, std::abs(d + s / rho), std::abs(s - rho * (1.0 - co)),
                          std::abs(d2 + d / rho - s * co / (rho * rho))});
    }
    return {"profile", worst, 1e-10, worst <= 1e-10, "max identity defect over 1e4 radii"};
}

CheckResult check_el_residual(const RunConfig& c) {
    const double s = c.scale.value_or(2.0 * c.r);
    auto sup = [&](std::size_t n) {
        const numerics::Grid2D grid(6.0 * s, n);
        const auto f = maps::sample_field([s](maps::Point2 x) { return maps::skyrmion_at_scale(x, s); }, grid);
        return energy::el_residual(f, c.r).sup_norm;
    };
    const double coarse = sup(121);
    const double fine = sup(241);
    const double ratio = coarse / fine;
    return {"el-residual", ratio, 3.0, ratio >= 3.0,
            "sup-norm reduction when the spacing halves (coarse " + io::format_number(coarse) +
                ", fine " + io::format_number(fine) + ")"};
}

CheckResult check_factorization(const RunConfig& c) {
    const double s = 2.0 * c.r;
    const numerics::Grid2D grid(20.0 * s, 401);
    const auto h = maps::sample_field([s](maps::Point2 x) { return maps::skyrmion_at_scale(x, s); }, grid);
    const auto base = energy::factorization_sides(h, c.r);
    double worst = std::abs(base.lhs - base.rhs) / (1.0 + std::abs(base.lhs));
    samples::Rng rng(c.seed);
    for (int i = 0; i < 10; ++i) {
        const auto phi = samples::random_tangent_field(h, rng, 2.0 * s, s, 1.0);
        const auto n = energy::perturb_field(h, phi, 1.0);
        const auto f = energy::factorization_sides(n, c.r);
        worst = std::max(worst, std::abs(f.lhs - f.rhs) / (1.0 + std::abs(f.lhs)));
    }
    return {"factorization", worst, 1e-3, worst < 1e-3,
            "max |lhs-rhs|/(1+|lhs|) over the skyrmion and 10 perturbed fields; helical sup " +
                io::format_number(base.helical_sup)};
}

CheckResult check_mode_split(const RunConfig& c) {
    const numerics::RadialGrid grid(1e-3, 1e3, 2000);
    samples::Rng rng(c.seed);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto f = samples::random_modal_field(grid, {0, 1, 2}, rng, 0.05, 20.0);
        const auto sc = hessian::mode_split_check(f, c.r);
        worst = std::max(worst, std::abs(sc.full - sc.split) / (1.0 + std::abs(sc.full)));
    }
    return {"mode-split", worst, 1e-6, worst < 1e-6, "max |full-split|/(1+|full|) over 20 fields"};
}

CheckResult check_substitution(const RunConfig& c) {
    const numerics::RadialGrid grid(1e-2, 1e2, 4001);
    samples::Rng rng(c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double a1 = u(rng), a2 = u(rng), v1 = u(rng), v2 = u(rng), p1 = u(rng), p2 = u(rng);
        const auto A = numerics::RadialFunction::from(grid, [&](double rho) {
            return rho * (1.0 + 0.5 * std::sin(a1 * std::log(rho) + 3.0 * a2));
        });
        const auto V = numerics::RadialFunction::from(grid, [&](double rho) {
            return v1 / rho + v2 * std::cos(std::log(rho));
        });
        const auto psi = numerics::RadialFunction::from(grid, [&](double rho) {
            return std::exp(p1 * std::sin(std::log(rho) + p2));
        });
        const auto g = samples::random_bump(grid, rng, 0.1, 10.0);
        const auto sc = hessian::substitution_identity_check(A, V, psi, g);
        worst = std::max(worst, std::abs(sc.lhs - sc.rhs) / (1.0 + std::abs(sc.lhs)));
    }
    // kernel direction sin(theta)/rho of the mode-1 operator at r = 0
    using maps::SkyrmionProfile;
    const auto A = numerics::RadialFunction::from(grid, [](double rho) { return rho; });
    const auto V = numerics::RadialFunction::from(grid, [](double rho) {
        const double c1 = 1.0 + SkyrmionProfile::cos_theta(rho);
        const double d = SkyrmionProfile::dtheta(rho);
        return c1 * c1 / rho - rho * d * d;
    });
    const auto psi = numerics::RadialFunction::from(grid, [](double rho) {
        return SkyrmionProfile::sin_theta(rho) / rho;
    });
    const auto kern = hessian::substitution_identity_check(A, V, psi, samples::bump(grid, 0.5, 5.0));
    const bool pass = worst < 1e-6 && std::abs(kern.kernel_term) < 1e-8;
    return {"substitution", worst, 1e-6, pass,
            "max relative gap over 50 tuples; kernel term " + io::format_number(kern.kernel_term)};
}

numerics::RadialGrid hardy_grid(double A, std::size_t n_radial) {
    // about 5e3 nodes per unit of log rho unless the user asks otherwise
    const double lo = 0.2;
    const double hi = 5.0 * A;
    const auto n = n_radial > 0 ? n_radial
                                : static_cast<std::size_t>(5000.0 * std::log(hi / lo)) + 1;
    return {lo, hi, n};
}

CheckResult check_hardy(const RunConfig& c) {
    double worst = 0.0;
    for (double A : c.A_list) {
        const auto hf = instability::make_hardy_function(A, hardy_grid(A, 0));
        worst = std::max(worst, instability::hardy_ratio(hf.xi()));
    }
    return {"hardy", worst, 0.25 + 1e-3, worst <= 0.25 + 1e-3,
            "max ratio over A = " + join(c.A_list)};
}

const std::vector<std::pair<std::string, Check>>& check_table() {
    static const std::vector<std::pair<std::string, Check>> t{
        {"profile", check_profile},         {"el-residual", check_el_residual},
        {"factorization", check_factorization}, {"mode-split", check_mode_split},
        {"substitution", check_substitution}, {"hardy", check_hardy}};
    return t;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    Emitter em(c, out);
    std::vector<std::string> names = c.checks;
    if (names.empty())
        for (const auto& [n, f] : check_table()) names.push_back(n);
    for (const auto& e : c.expect_fail) {
        bool known = false;
        for (const auto& [n, f] : check_table()) known |= n == e;
        require(known, "--expect-fail: unknown check '" + e + "'");
    }
    io::Record rec;
    io::Table table({"index", "measured", "tolerance", "passed", "expected_pass"});
    bool all_as_expected = true;
    int index = 0;
    for (const auto& name : names) {
        const Check* fn = nullptr;
        for (const auto& [n, f] : check_table())
            if (n == name) fn = &f;
        require(fn != nullptr, "--check: unknown check '" + name + "'");
        const CheckResult res = (*fn)(c);
        const bool expect_pass =
            std::find(c.expect_fail.begin(), c.expect_fail.end(), name) == c.expect_fail.end();
        all_as_expected &= res.passed == expect_pass;
        rec.set(name + ".status", res.passed ? "pass" : "fail")
            .set(name + ".measured", res.measured)
            .set(name + ".tolerance", res.tolerance)
            .set(name + ".expected", expect_pass ? "pass" : "fail")
            .set(name + ".detail", res.detail);
        table.add_row({static_cast<double>(index++), res.measured, res.tolerance,
                       res.passed ? 1.0 : 0.0, expect_pass ? 1.0 : 0.0});
        if (name == "hardy") {
            io::Table ht({"A", "ratio", "epsilon", "max_slope_upper_ramp", "slope_bound"});
            for (double A : c.A_list) {
                const auto hf = instability::make_hardy_function(A, hardy_grid(A, 0));
                const double ratio = instability::hardy_ratio(hf.xi());
                ht.add_row({A, ratio, 1.0 / ratio - 4.0, hf.max_slope_on_upper_ramp(), 2.0 / A});
            }
            std::ostringstream os;
            ht.write(os);
            em.side_file(".hardy", os.str());
        }
    }
    rec.set("all_as_expected", all_as_expected);
    if (c.format == "table") {
        io::Record names_rec;
        for (std::size_t i = 0; i < names.size(); ++i) names_rec.set("check" + std::to_string(i), names[i]);
        names_rec.set("all_as_expected", all_as_expected);
        em.table(table, names_rec);
    } else {
        em.record(rec);
    }
    em.flush();
    return all_as_expected ? ok : check_failure;
}

// ---------------------------------------------------------------- modes

int cmd_hessian_mode(const RunConfig& c, std::ostream& out) {
    Emitter em(c, out);
    const auto grid = radial_grid(c);
    io::Table t({"k", "r", "value", "min_eig"});
    io::Record rec;
    for (int k : parse_k(c.k_spec)) {
        const hessian::ModeForm form(k, c.r);
        const auto eig = hessian::min_mode_eigenpair(form, grid, !c.full);
        hessian::ModeReport rep{k, c.r, hessian::mode_form_value(form, eig.alpha, eig.beta),
                                eig.eigenvalue, grid};
        t.add_row({static_cast<double>(k), c.r, rep.value, eig.eigenvalue});
        rec.merge(rep.to_record(), "k" + std::to_string(k));
    }
    if (c.format == "table")
        em.table(t, io::Record().set("grid", grid.describe()));
    else
        em.record(rec);
    em.flush();
    return ok;
}

int cmd_threshold(const RunConfig& c, std::ostream& out) {
    Emitter em(c, out);
    instability::ThresholdOptions opt{!c.full, radial_grid(c)};
    io::Table t({"k", "found", "r_c", "bracket_lo", "bracket_hi", "eig_lo", "eig_hi"});
    io::Record rec;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int k : parse_k(c.k_spec)) {
        const std::string key = "k" + std::to_string(k);
        try {
            const auto res = instability::threshold_scan(k, c.r_lo, c.r_hi, c.tol, opt);
            t.add_row({static_cast<double>(k), 1.0, res.r_c, res.bracket_lo, res.bracket_hi,
                       res.eig_lo, res.eig_hi});
            rec.set(key + ".outcome", "threshold").merge(res.to_record(), key);
        } catch (const InvalidInput&) {
            // a constant sign over the range is a result, not a usage error
            t.add_row({static_cast<double>(k), 0.0, nan, c.r_lo, c.r_hi, nan, nan});
            rec.set(key + ".outcome", "no sign change");
        }
    }
    if (c.format == "table")
        em.table(t, io::Record().set("grid", opt.grid.describe()));
    else
        em.record(rec);
    em.flush();
    return ok;
}

int cmd_instability_witness(const RunConfig& c, std::ostream& out) {
    Emitter em(c, out);
    const auto ks = parse_k(c.k_spec);
    require(ks.size() == 1, "instability-witness takes a single --k");
    instability::SearchOptions opt;
    opt.A_values = c.A_list;
    opt.lambda_values = c.lambda_list;
    const auto res = instability::find_negative_direction(ks[0], c.r, opt);
    io::Record rec;
    rec.set("found", res.witness.has_value())
        .set("best_value", res.best_value)
        .set("best_A", res.best_A)
        .set("best_lambda", res.best_lambda);
    io::Table sweep({"A", "lambda", "value"});
    for (const auto& p : res.sweep) sweep.add_row({p.A, p.lambda, p.value});
    if (res.witness) {
        rec.merge(res.witness->to_record(), "witness");
        // the same direction through the polar frame form (mode sum)
        const auto field = instability::unstable_modal_field(res.witness->xi, ks[0]);
        const auto sc = hessian::mode_split_check(field, c.r);
        rec.set("witness.frame_form", sc.full).set("witness.mode_sum", sc.split);
    }
    if (c.format == "table")
        em.table(sweep, rec);
    else
        em.record(rec);
    if (res.witness) {
        std::ostringstream os;
        res.witness->xi_table().write(os);
        em.side_file(".xi", os.str());
    }
    em.flush();
    return ok;
}

int cmd_counterexample(const RunConfig& c, std::ostream& out) {
    Emitter em(c, out);
    counterexample::SweepOptions opt;
    opt.spacing = c.grid_spacing;
    const auto rep = counterexample::stitched_energy_sweep(c.r, c.L_list, opt);
    if (c.format == "table") {
        em.table(rep.table(), rep.summary());
    } else {
        io::Record rec = rep.summary();
        for (std::size_t i = 0; i < rep.L.size(); ++i) {
            const auto& e = rep.energies[i];
            const std::string key = "L" + std::to_string(i);
            rec.set(key + ".L", rep.L[i]).set(key + ".total", e.total).set(key + ".degree", e.degree);
        }
        em.record(rec);
    }
    em.flush();
    return ok;
}

int cmd_hardy(const RunConfig& c, std::ostream& out) {
    Emitter em(c, out);
    io::Table t({"A", "ratio", "epsilon", "max_slope_upper_ramp", "slope_bound"});
    io::Record rec;
    double worst = 0.0;
    for (double A : c.A_list) {
        const auto hf = instability::make_hardy_function(A, hardy_grid(A, c.n_radial_set ? c.n_radial : 0));
        const double ratio = instability::hardy_ratio(hf.xi());
        worst = std::max(worst, ratio);
        t.add_row({A, ratio, 1.0 / ratio - 4.0, hf.max_slope_on_upper_ramp(), 2.0 / A});
        rec.set("A" + io::format_number(A) + ".ratio", ratio);
    }
    rec.set("max_ratio", worst);
    if (c.format == "table")
        em.table(t, io::Record().set("max_ratio", worst));
    else
        em.record(rec);
    em.flush();
    return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    double scale = 0.0;
    double X = 0.0;
    CLI::App app{"Numerical checks of skyrmion energy, Hessian modes and instability"};
    app.name("skyrmion");
    app.require_subcommand(1);

    auto common = [&](CLI::App* s) {
        s->add_option("--out", c.out_path, "Write the result to this file instead of stdout");
        s->add_option("--format", c.format, "Output format: record or table")
            ->check(CLI::IsMember({"record", "table"}));
        s->add_option("--seed", c.seed, "Seed for random test functions")->capture_default_str();
    };
    auto radial = [&](CLI::App* s) {
        s->add_option("--rho-min", c.rho_min, "Smallest radial node")->capture_default_str();
        s->add_option("--rho-max", c.rho_max, "Largest radial node")->capture_default_str();
        s->add_option("--n-radial", c.n_radial, "Radial node count")->capture_default_str();
        s->add_option("--spacing", c.spacing_mode, "geometric or uniform")->capture_default_str();
    };

    auto* energy = app.add_subcommand("energy", "Energy breakdown and degree of a field");
    energy->add_option("--field", c.field, "skyrmion, constant-e3, stitched or file")->capture_default_str();
    energy->add_option("--file", c.file, "Field file with header 'x1 x2 n1 n2 n3'");
    energy->add_option("--scale", scale, "Skyrmion scale (default 1)");
    energy->add_option("--r", c.r, "DM coupling r")->capture_default_str();
    energy->add_option("--p", c.p, "Anisotropy exponent p >= 2")->capture_default_str();
    energy->add_option("--L", c.L, "Strip half-width for --field stitched")->capture_default_str();
    energy->add_option("--X", X, "Grid half-width (default 40*scale; stitched: L + 20/r in x2)");
    energy->add_option("--n", c.n_per_side, "Nodes per side (x1 for stitched)")->capture_default_str();
    energy->add_option("--tail", c.tail, "Boundary tail model: radial or none")->capture_default_str();
    common(energy);

    auto* verify = app.add_subcommand("verify", "Run the invariant checks");
    verify->add_option("--check", c.checks,
                       "Checks to run (profile, el-residual, factorization, mode-split, "
                       "substitution, hardy); default all")
        ->delimiter(',');
    verify->add_option("--expect-fail", c.expect_fail, "Checks that are expected to fail")->delimiter(',');
    verify->add_option("--r", c.r, "DM coupling r")->capture_default_str();
    verify->add_option("--scale", scale, "Skyrmion scale for el-residual (default 2r)");
    verify->add_option("--A", c.A_list, "Hardy cutoff scales")->delimiter(',');
    common(verify);

    auto* mode = app.add_subcommand("hessian-mode", "Lowest eigenvalue of the mode forms");
    mode->add_option("--k", c.k_spec, "Mode or range such as 2..6")->capture_default_str();
    mode->add_option("--r", c.r, "DM coupling r")->capture_default_str();
    mode->add_flag("--full", c.full, "Also solve the alpha = -beta branch");
    radial(mode);
    common(mode);

    auto* thr = app.add_subcommand("threshold", "Bisection for the instability threshold");
    thr->add_option("--k", c.k_spec, "Mode or range such as 2..6")->capture_default_str();
    thr->add_option("--r-lo", c.r_lo, "Lower end of the r bracket")->capture_default_str();
    thr->add_option("--r-hi", c.r_hi, "Upper end of the r bracket")->capture_default_str();
    thr->add_option("--tol", c.tol, "Bracket width")->capture_default_str();
    thr->add_flag("--full", c.full, "Use both branches instead of alpha = beta");
    radial(thr);
    common(thr);

    auto* wit = app.add_subcommand("instability-witness", "Search Hardy-type negative directions");
    wit->add_option("--k", c.k_spec, "Mode k >= 2")->capture_default_str();
    wit->add_option("--r", c.r, "DM coupling r")->capture_default_str();
    wit->add_option("--A", c.A_list, "Hardy cutoff scales")->delimiter(',');
    wit->add_option("--lambda", c.lambda_list, "Rescaling factors")->delimiter(',');
    common(wit);

    auto* cex = app.add_subcommand("counterexample", "Energy of the stitched strip maps against L");
    cex->add_option("--r", c.r, "DM coupling r")->capture_default_str();
    cex->add_option("--L", c.L_list, "Strip half-widths, increasing")->delimiter(',');
    cex->add_option("--grid-spacing", c.grid_spacing, "2D grid spacing (default 0.05/r)");
    common(cex);

    auto* hardy = app.add_subcommand("hardy", "Hardy ratio of the cutoff family");
    hardy->add_option("--A", c.A_list, "Cutoff scales")->delimiter(',');
    hardy->add_option("--n-radial", c.n_radial, "Radial node count (default ~5000 per unit log rho)");
    common(hardy);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : invalid_input;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        c.command = sub->get_name();
        auto given = [sub](const std::string& name) {
            const CLI::Option* o = sub->get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (given("--scale")) c.scale = scale;
        if (given("--X")) c.X = X;
        c.n_radial_set = given("--n-radial");
        if (sub == energy) return cmd_energy(c, out);
        if (sub == verify) return cmd_verify(c, out);
        if (sub == mode) return cmd_hessian_mode(c, out);
        if (sub == thr) return cmd_threshold(c, out);
        if (sub == wit) return cmd_instability_witness(c, out);
        if (sub == cex) return cmd_counterexample(c, out);
        return cmd_hardy(c, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    } catch (const NumericFailure& e) {
        err << "numeric failure: " << e.what() << '\n';
        return numeric_failure;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"skyrmion"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace skyrmion::cli
