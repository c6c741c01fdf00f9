// lrp: command-line driver for the left-regulated primitive library.
#include "lrp/gauge.hpp"
#include "lrp/integral.hpp"
#include "lrp/io.hpp"
#include "lrp/suites.hpp"
#include "lrp/systems.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace lrp;

namespace {

struct Common {
    int m = 0;        // 0: the builder's default
    double grid = 0;
    double tol = 0;   // 0: the command's default
    double a = NAN;
    double T = NAN;
    unsigned seed = 1;
    std::string out;
    std::string format = "report";
};

void add_common(CLI::App* app, Common& o) {
    app->add_option("--m", o.m, "series truncation depth / system order")->check(CLI::NonNegativeNumber);
    app->add_option("--grid", o.grid, "grid points per unit (0: default)")->check(CLI::NonNegativeNumber);
    app->add_option("--tol", o.tol, "tolerance (0: default)")->check(CLI::NonNegativeNumber);
    app->add_option("--a", o.a, "left end of the domain");
    app->add_option("--T", o.T, "right end / truncation of the domain");
    app->add_option("--seed", o.seed, "seed for randomized runs");
    app->add_option("--out", o.out, "write output to this file instead of stdout");
    app->add_option("--format", o.format, "csv or report")->check(CLI::IsMember({"csv", "report"}));
}

void emit(const Common& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        io::write_file(o.out, text);
    }
}

examples::Params fn_params(const Common& o) {
    examples::Params p;
    if (o.m > 0) p.m = o.m;
    if (!std::isnan(o.a)) p.a = o.a;
    if (!std::isnan(o.T)) p.T = o.T;
    return p;
}

// a builder name, or @file holding a step function in the text format
RegulatedFn load_fn(const std::string& arg, const Common& o) {
    if (!arg.empty() && arg[0] == '@') return RegulatedFn::step(io::step_from_text(io::read_file(arg.substr(1))));
    return examples::build_function(arg, fn_params(o));
}

// [a, b] from the flags, else the domain; out-of-domain requests raise downstream
std::pair<double, double> range_of(const RegulatedFn& f, const Common& o) {
    const Interval& d = f.domain();
    double a = std::isnan(o.a) ? d.lo : o.a;
    double b = std::isnan(o.T) ? d.hi : o.T;
    if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError("unbounded domain; pass --a/--T");
    return {a, b};
}

io::json fn_json(const RegulatedFn& f) {
    return io::json{{"describe", f.describe()}, {"domain", f.domain().str()}, {"exact", f.exact()}};
}

int cmd_integrate(const std::string& name, bool as_primitive, const Common& o) {
    RegulatedFn f = load_fn(name, o);
    auto [a, b] = range_of(f, o);
    double tol = o.tol > 0 ? o.tol : 1e-10;
    io::Report rep;
    rep.id = "integrate:" + name;
    rep.params = {{"a", a}, {"b", b}, {"tol", tol}, {"m", o.m}, {"as_primitive", as_primitive}};
    rep.params["function"] = fn_json(f);
    if (as_primitive) {
        Distribution d = Distribution::from_primitive_auto(f);
        rep.params["space"] = to_string(d.tag);
        if (f.exact()) {
            Rat r = primitive_integral_exact(d, Rat::from_double(a), Rat::from_double(b));
            rep.outputs["integral"] = io::exact_num(r);
        } else {
            rep.outputs["integral"] = io::approx_num(primitive_integral(d, a, b), 0);
        }
    } else {
        QuadResult q = integrate_regulated(f, a, b, tol);
        rep.outputs["integral"] = io::approx_num(q.value, q.error);
    }
    emit(o, rep.dump());
    return 0;
}

int cmd_norm(const std::string& name, const std::string& kind, const Common& o) {
    RegulatedFn f = load_fn(name, o);
    auto [a, b] = range_of(f, o);
    double tol = o.tol > 0 ? o.tol : 1e-10;
    NormKind k = parse_norm_kind(kind);
    NormValue v = norm(f, k, Interval::closed(a, b), tol);
    io::Report rep;
    rep.id = "norm:" + name;
    rep.params = {{"kind", to_string(k)}, {"a", a}, {"b", b}, {"tol", tol}, {"m", o.m}};
    rep.params["function"] = fn_json(f);
    rep.outputs["norm"] = v.exact ? io::exact_num(*v.exact) : io::approx_num(v.value, v.error);
    rep.outputs["certified"] = v.certified;
    emit(o, rep.dump());
    return 0;
}

int cmd_stieltjes(const std::string& fname, const std::string& gname, const Common& o) {
    RegulatedFn F = load_fn(fname, o), g = load_fn(gname, o);
    auto [a, b] = range_of(F, o);
    double tol = o.tol > 0 ? o.tol : 1e-6;
    StieltjesResult s = stieltjes(F, g, a, b, tol);
    io::Report rep;
    rep.id = "stieltjes:" + fname + ":" + gname;
    rep.params = {{"a", a}, {"b", b}, {"tol", tol}, {"m", o.m}};
    rep.params["F"] = fn_json(F);
    rep.params["g"] = fn_json(g);
    rep.outputs["integral"] = s.exact ? io::exact_num(*s.exact) : io::approx_num(s.value, s.error);
    rep.outputs["level"] = io::exact_int(s.level);
    rep.outputs["cells"] = io::exact_int((long long)s.cells);
    rep.outputs["certified"] = s.certified;
    emit(o, rep.dump());
    return 0;
}

int cmd_solve(const std::string& run, const std::string& config, const std::string& trace, const Common& o) {
    io::SystemSpec spec;
    if (!config.empty()) spec = io::SystemSpec::load(config);
    if (!run.empty()) spec.run = run;
    if (spec.run.empty()) throw ConfigError("solve needs a run name or --config");
    if (o.grid > 0) spec.grid = o.grid;
    if (o.tol > 0) spec.quad_tol = o.tol;
    if (!std::isnan(o.T)) spec.T = o.T;
    if (!std::isnan(o.a)) spec.a = o.a;
    if (o.m > 0) spec.m = o.m;
    if (config.empty()) spec.seed = o.seed;
    spec.check();
    io::RunOutput r = io::run_spec(spec);
    if (o.format == "csv") {
        if (r.traces.empty()) throw ConfigError("run '" + spec.run + "' has no trace");
        const IterationTrace* t = &r.traces.front().second;
        if (!trace.empty()) {
            t = nullptr;
            for (const auto& [n, tr] : r.traces)
                if (n == trace) t = &tr;
            if (!t) throw ConfigError("no trace named '" + trace + "'");
        }
        emit(o, t->csv());
    } else {
        emit(o, r.report.dump());
    }
    return r.report.ok ? 0 : 1;
}

int cmd_example(const std::string& name, const Common& o) {
    systems::Example ex = systems::build_example(name, fn_params(o));
    if (const RegulatedFn* f = std::get_if<RegulatedFn>(&ex)) {
        double ppu = o.grid > 0 ? o.grid : 64;
        if (o.format == "csv") {
            emit(o, io::csv_function(*f, ppu));
            return 0;
        }
        io::Report rep;
        rep.id = "example:" + name;
        rep.params = {{"m", o.m}};
        rep.outputs["function"] = fn_json(*f);
        const Interval& d = f->domain();
        io::json br = io::json::array();
        if (d.bounded())
            for (double t : f->break_points(d.lo, d.hi)) {
                Limits l = f->limits(t);
                io::json e{{"t", io::num17(t)}, {"value", io::num17(l.value)}};
                e["left"] = l.left ? io::json(io::num17(*l.left)) : io::json(nullptr);
                e["right"] = l.right ? io::json(io::num17(*l.right)) : io::json(nullptr);
                br.push_back(e);
                if (br.size() >= 100) break;
            }
        rep.outputs["breaks"] = br;
        emit(o, rep.dump());
        return 0;
    }
    io::Report rep;
    rep.id = "example:" + name;
    if (const CauchySystem* S = std::get_if<CauchySystem>(&ex)) {
        rep.outputs["kind"] = "cauchy_system";
        rep.outputs["components"] = io::exact_int((long long)S->m);
        rep.outputs["interval"] = Interval::right_open(S->a, S->b).str();
        rep.outputs["c"] = S->c;
        rep.outputs["name"] = S->name;
    } else {
        const MajorantOp& M = std::get<MajorantOp>(ex);
        rep.outputs["kind"] = "majorant";
        rep.outputs["name"] = M.name;
        rep.outputs["grid_nodes"] = io::exact_int((long long)M.grid->size());
    }
    if (o.format == "csv") throw ConfigError("csv export needs a function example; use solve for systems");
    emit(o, rep.dump());
    return 0;
}

int cmd_suite(const std::string& name, size_t count, const Common& o) {
    suites::SuiteResult r = suites::run_suite(name, o.seed, count);
    io::Report rep = suites::to_report(r);
    emit(o, rep.dump());
    std::fprintf(stderr, "%s: %zu cases, %zu checks, %zu violations\n", r.name.c_str(), r.cases, r.checks,
                 r.violations);
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"left-regulated primitives: integrals, norms, Stieltjes sums and Cauchy systems"};
    app.require_subcommand(1);

    Common o;
    std::string fname, gname, kind = "alexiewicz", run, config, trace, ex_name, suite_name;
    bool as_primitive = false;
    size_t count = 0;

    auto* integ = app.add_subcommand("integrate", "integrate a function (or the distribution of a primitive) over [a, T]");
    integ->add_option("function", fname, "builder name or @step.yaml")->required();
    integ->add_flag("--primitive", as_primitive, "treat the function as a primitive: F(T) - F(a)");
    add_common(integ, o);

    auto* nrm = app.add_subcommand("norm", "Alexiewicz, L1 or sup norm over [a, T]");
    nrm->add_option("function", fname, "builder name or @step.yaml")->required();
    nrm->add_option("--kind", kind, "alexiewicz | l1 | sup");
    add_common(nrm, o);

    auto* stj = app.add_subcommand("stieltjes", "left-gauge Stieltjes integral of F dg over [a, T]");
    stj->add_option("F", fname, "integrand")->required();
    stj->add_option("g", gname, "integrator of bounded variation")->required();
    add_common(stj, o);

    auto* slv = app.add_subcommand("solve", "run a named system (osc2, quadstep, ...) or a YAML config");
    slv->add_option("run", run, "run name");
    slv->add_option("--config", config, "YAML system description");
    slv->add_option("--trace", trace, "trace to export with --format csv (default: first)");
    add_common(slv, o);

    auto* exm = app.add_subcommand("example", "build a named example function or system");
    exm->add_option("name", ex_name, "example name")->required();
    add_common(exm, o);

    auto* ste = app.add_subcommand("suite", "run a seeded property suite; nonzero exit on violations");
    ste->add_option("name", suite_name, "norms | lattice | parts | gauge | solver | approx | ftc")->required();
    ste->add_option("--count", count, "number of cases (0: default)");
    add_common(ste, o);

    app.add_subcommand("list", "list example, run and suite names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*integ) return cmd_integrate(fname, as_primitive, o);
        if (*nrm) return cmd_norm(fname, kind, o);
        if (*stj) return cmd_stieltjes(fname, gname, o);
        if (*slv) return cmd_solve(run, config, trace, o);
        if (*exm) return cmd_example(ex_name, o);
        if (*ste) return cmd_suite(suite_name, count, o);
        auto print = [](const char* head, const std::vector<std::string>& v) {
            std::cout << head << ':';
            for (const auto& s : v) std::cout << ' ' << s;
            std::cout << '\n';
        };
        print("examples", systems::example_names());
        print("runs", io::run_names());
        print("suites", suites::suite_names());
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
