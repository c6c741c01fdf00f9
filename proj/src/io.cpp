#include "lrp/io.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lrp::io {

std::string num17(double x) {
    char buf[64];
    if (x == 0) x = 0;   // no "-0"
    auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string dec12(double x) {
    char buf[64];
    if (x == 0) x = 0;   // no "-0"
    auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, r.ptr);
}

namespace {

struct Row {
    double val, right;
};

Row sample_node(const RegulatedFn& f, const Grid& g, size_t k) {
    if (const SampledFn* s = f.as_sampled(); s && s->grid.get() == &g) return {s->val[k], s->right[k]};
    double t = g.t[k];
    double v = f.value(t);
    double r = v;
    if (g.brk[k] && k + 1 < g.size()) {
        Limits l = f.limits(t);
        if (l.right) r = *l.right;
    }
    return {v, r};
}

} // namespace

std::string csv_functions(const FnVec& fs, const GridP& grid) {
    std::ostringstream os;
    os << "t";
    if (fs.size() == 1) {
        os << ",value";
    } else {
        for (size_t i = 0; i < fs.size(); ++i) os << ",x" << i + 1;
    }
    os << "\n";
    std::vector<Row> rows(fs.size());
    for (size_t k = 0; k < grid->size(); ++k) {
        bool jump = false;
        for (size_t i = 0; i < fs.size(); ++i) {
            rows[i] = sample_node(fs[i], *grid, k);
            if (rows[i].right != rows[i].val) jump = true;
        }
        std::string t = num17(grid->t[k]);
        os << t;
        for (const Row& r : rows) os << "," << num17(r.val);
        os << "\n";
        if (jump) {
            os << t << "+";
            for (const Row& r : rows) os << "," << num17(r.right);
            os << "\n";
        }
    }
    return os.str();
}

std::string csv_function(const RegulatedFn& f, const GridP& grid) { return csv_functions({f}, grid); }

std::string csv_function(const RegulatedFn& f, double ppu) {
    const Interval& d = f.domain();
    if (!d.bounded()) throw ConfigError("export needs a bounded domain; truncate first");
    auto g = Grid::uniform(d.lo, d.hi, ppu, f.break_points(d.lo, d.hi));
    return csv_function(f, g);
}

std::string step_to_text(const StepFn& s) {
    YAML::Emitter e;
    e << YAML::BeginMap;
    e << YAML::Key << "base_point" << YAML::Value << YAML::DoubleQuoted << s.lo().str();
    e << YAML::Key << "base_value" << YAML::Value << YAML::DoubleQuoted << s.base_value().str();
    e << YAML::Key << "pieces" << YAML::Value << YAML::BeginSeq;
    for (const StepPiece& p : s.pieces()) {
        e << YAML::Flow << YAML::BeginMap;
        e << YAML::Key << "x" << YAML::Value << YAML::DoubleQuoted << p.x.str();
        e << YAML::Key << "y" << YAML::Value << YAML::DoubleQuoted << p.y.str();
        e << YAML::Key << "v" << YAML::Value << YAML::DoubleQuoted << p.v.str();
        e << YAML::EndMap;
    }
    e << YAML::EndSeq << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

StepFn step_from_text(const std::string& text) {
    YAML::Node n;
    try {
        n = YAML::Load(text);
    } catch (const YAML::Exception& ex) {
        throw ConfigError(std::string("step function text: ") + ex.what());
    }
    if (!n["base_point"] || !n["base_value"] || !n["pieces"] || !n["pieces"].IsSequence())
        throw ConfigError("step function text needs base_point, base_value and a pieces list");
    auto rat = [](const YAML::Node& v, const char* what) {
        if (!v) throw ConfigError(std::string("step piece missing ") + what);
        return Rat::parse(v.as<std::string>());
    };
    Rat a = rat(n["base_point"], "base_point");
    Rat base = rat(n["base_value"], "base_value");
    std::vector<StepPiece> pieces;
    for (const auto& p : n["pieces"]) pieces.push_back({rat(p["x"], "x"), rat(p["y"], "y"), rat(p["v"], "v")});
    if (pieces.empty()) throw ConfigError("step function text has no pieces");
    return StepFn(a, base, pieces);
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << contents;
    f.close();
    if (!f) throw IoError("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

json exact_num(const std::string& expr, double value) {
    return json{{"exact", expr}, {"decimal", dec12(value)}, {"tol", "exact"}};
}

json exact_num(const Rat& r) { return exact_num(r.str(), r.to_double()); }

json exact_int(long long v) { return json{{"value", v}, {"tol", "exact"}}; }

json approx_num(double value, double tol) {
    json j{{"decimal", dec12(value)}};
    if (std::isfinite(tol))
        j["tol"] = tol;
    else
        j["tol"] = "unbounded";
    return j;
}

namespace {
json measured(double v) { return json{{"decimal", dec12(v)}, {"tol", "measured"}}; }
} // namespace

json Report::to_json() const {
    json j;
    j["run"] = id;
    j["ok"] = ok;
    j["params"] = params;
    j["outputs"] = outputs;
    if (!failures.empty()) j["failures"] = failures;
    return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

json trace_summary(const IterationTrace& t, double tol) {
    json j;
    j["direction"] = to_string(t.dir);
    j["stages"] = exact_int(long(t.stages.size()));
    j["stabilization_index"] = exact_int(t.stabilization_index);
    j["omega_stages"] = exact_int(t.omega_stages);
    j["converged"] = t.converged;
    j["last_diff"] = approx_num(t.last_diff, tol);
    json labels = json::array();
    for (const Stage& s : t.stages) labels.push_back(s.label);
    j["labels"] = labels;
    json fin = json::array();
    for (const RegulatedFn& f : t.result) fin.push_back(f.label().empty() ? f.describe() : f.label());
    j["result"] = fin;
    return j;
}

Report report_osc2(const systems::Osc2Report& r, const systems::Osc2Params& p, const ChainOptions& opt) {
    Report rep;
    rep.id = "osc2";
    rep.params = {{"quad_tol", p.quad_tol}, {"grid", p.ppu}, {"G1", p.g1}, {"G2", p.g2},
                  {"bound", p.bound}, {"tol", opt.tol}, {"max_steps", opt.max_steps},
                  {"max_omega", opt.max_omega}};
    json& o = rep.outputs;
    o["J_A"] = approx_num(r.J_A, r.err_A);
    o["J_B"] = approx_num(r.J_B, r.err_B);
    auto coef = [](const std::string& name, const char* fn, long k) {
        double q = std::string(fn) == "arctan" ? std::atan(double(k) * 1e-4) : std::tanh(double(k) * 1e-4);
        json j = exact_num(name, q);
        j["quantized"] = exact_num(Rat(k, 10000));
        return j;
    };
    o["lower"] = {{"x1", coef(r.lower1, "arctan", r.kl1)}, {"x2", coef(r.lower2, "tanh", r.kl2)}};
    o["upper"] = {{"x1", coef(r.upper1, "arctan", r.ku1)}, {"x2", coef(r.upper2, "tanh", r.ku2)}};
    o["stabilization_index"] = {{"up", exact_int(r.up.stabilization_index)},
                                {"down", exact_int(r.down.stabilization_index)},
                                {"scalar_up", exact_int(r.scalar_lower.stabilization_index)},
                                {"scalar_down", exact_int(r.scalar_upper.stabilization_index)},
                                {"expected", exact_int(16)}};
    o["residual"] = {{"lower", approx_num(r.residual_lower, opt.verify_tol)},
                     {"upper", approx_num(r.residual_upper, opt.verify_tol)}};
    o["paths_agree"] = r.paths_agree;
    o["up"] = trace_summary(r.up, opt.tol);
    o["down"] = trace_summary(r.down, opt.tol);
    o["seconds"] = measured(r.seconds);
    rep.ok = r.paths_agree && r.residual_lower <= opt.verify_tol && r.residual_upper <= opt.verify_tol;
    if (!rep.ok) rep.failures.push_back("chains did not reach verified fixed points with agreeing coefficients");
    return rep;
}

// ---------------------------------------------------------------------------

std::vector<std::string> run_names() {
    return {"osc2", "quadstep", "uniqueness", "l1minmax", "weighted", "higher_order", "constant"};
}

SystemSpec SystemSpec::parse(const std::string& text) {
    YAML::Node n;
    try {
        n = YAML::Load(text);
    } catch (const YAML::Exception& ex) {
        throw ConfigError(std::string("system config: ") + ex.what());
    }
    if (!n.IsMap()) throw ConfigError("system config must be a map");
    static const std::set<std::string> top{"run", "params", "chain"};
    static const std::set<std::string> params{"quad_tol", "grid", "a", "T", "m", "k", "seed", "c", "H", "lo", "hi"};
    static const std::set<std::string> chain{"tol", "max_steps", "max_omega", "verify_tol"};
    auto check_keys = [](const YAML::Node& m, const std::set<std::string>& ok, const char* where) {
        if (!m.IsMap()) throw ConfigError(std::string(where) + " must be a map");
        for (const auto& kv : m) {
            std::string k = kv.first.as<std::string>();
            if (!ok.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
        }
    };
    check_keys(n, top, "system config");
    SystemSpec s;
    if (!n["run"]) throw ConfigError("system config needs 'run'");
    s.run = n["run"].as<std::string>();
    try {
        if (auto p = n["params"]) {
            check_keys(p, params, "params");
            if (p["quad_tol"]) s.quad_tol = p["quad_tol"].as<double>();
            if (p["grid"]) s.grid = p["grid"].as<double>();
            if (p["a"]) s.a = p["a"].as<double>();
            if (p["T"]) s.T = p["T"].as<double>();
            if (p["m"]) s.m = p["m"].as<int>();
            if (p["k"]) s.k = p["k"].as<double>();
            if (p["seed"]) s.seed = p["seed"].as<unsigned>();
            if (p["c"]) s.c = p["c"].as<std::vector<double>>();
            if (p["H"])
                for (const auto& h : p["H"]) s.H.push_back(Rat::parse(h.as<std::string>()));
            if (p["lo"] || p["hi"]) {
                if (!p["lo"] || !p["hi"]) throw ConfigError("order bounds need both lo and hi");
                s.lo = p["lo"].as<double>();
                s.hi = p["hi"].as<double>();
                s.has_bounds = true;
            }
        }
        if (auto c = n["chain"]) {
            check_keys(c, chain, "chain");
            if (c["tol"]) s.tol = c["tol"].as<double>();
            if (c["max_steps"]) s.max_steps = c["max_steps"].as<int>();
            if (c["max_omega"]) s.max_omega = c["max_omega"].as<int>();
            if (c["verify_tol"]) s.verify_tol = c["verify_tol"].as<double>();
        }
    } catch (const YAML::Exception& ex) {
        throw ConfigError(std::string("system config value: ") + ex.what());
    }
    s.check();
    return s;
}

SystemSpec SystemSpec::load(const std::string& path) { return parse(read_file(path)); }

void SystemSpec::check() const {
    bool known = false;
    for (const auto& r : run_names()) known |= r == run;
    if (!known) throw ConfigError("unknown run '" + run + "'");
    if (!std::isfinite(T) || T < 0) throw ConfigError("T must be finite and positive");
    if (T != 0 && !(T > a)) throw ConfigError("T must exceed a");
    if (grid < 0 || !std::isfinite(grid)) throw ConfigError("grid density must be positive");
    if (!(quad_tol > 0)) throw ConfigError("quad_tol must be positive");
    if (tol && !(*tol > 0)) throw ConfigError("chain tol must be positive");
    if (max_steps && *max_steps < 1) throw ConfigError("max_steps must be >= 1");
    if (max_omega && *max_omega < 0) throw ConfigError("max_omega must be >= 0");
    if (run == "higher_order" && m < 0) throw ConfigError("higher_order needs m >= 1");
    if (run == "quadstep" && T != 0 && T != std::floor(T)) throw ConfigError("quadstep needs an integer T");
    if (run == "uniqueness" && T != 0 && T != std::floor(T)) throw ConfigError("uniqueness needs an integer T");
}

namespace {

ChainOptions chain_from(const SystemSpec& s, ChainOptions o) {
    if (s.tol) o.tol = *s.tol;
    if (s.max_steps) o.max_steps = *s.max_steps;
    if (s.max_omega) o.max_omega = *s.max_omega;
    if (s.verify_tol) o.verify_tol = *s.verify_tol;
    return o;
}

json opts_json(const ChainOptions& o) {
    return {{"tol", o.tol}, {"max_steps", o.max_steps}, {"max_omega", o.max_omega}, {"verify_tol", o.verify_tol}};
}

double grid_error(const RegulatedFn& f, const RegulatedFn& ref, const GridP& g) {
    RegulatedFn a = sample(f, g), b = sample(ref, g);
    const SampledFn* sa = a.as_sampled();
    const SampledFn* sb = b.as_sampled();
    double e = 0;
    for (size_t k = 0; k < g->size(); ++k)
        e = std::max({e, std::fabs(sa->val[k] - sb->val[k]), std::fabs(sa->right[k] - sb->right[k])});
    return e;
}

void solutions_out(RunOutput& out, const Solutions& sol, const ChainOptions& o) {
    json& j = out.report.outputs;
    j["up"] = trace_summary(sol.up, o.tol);
    j["down"] = trace_summary(sol.down, o.tol);
    j["residual"] = {{"lower", approx_num(sol.residual_lower, o.verify_tol)},
                     {"upper", approx_num(sol.residual_upper, o.verify_tol)}};
    j["order_gap"] = approx_num(sol.order_gap, o.verify_tol);
    j["bracket_gap"] = approx_num(sol.bracket_gap, o.verify_tol);
    out.traces.push_back({"up", sol.up});
    out.traces.push_back({"down", sol.down});
    out.solutions.push_back({"lower", sol.lower});
    out.solutions.push_back({"upper", sol.upper});
    if (!(sol.residual_lower <= o.verify_tol && sol.residual_upper <= o.verify_tol)) {
        out.report.ok = false;
        out.report.failures.push_back("fixed-point residual above verify_tol");
    }
    if (!sol.up.converged || !sol.down.converged) {
        out.report.ok = false;
        out.report.failures.push_back("chain budget exhausted");
    }
}

} // namespace

RunOutput run_spec(const SystemSpec& s) {
    s.check();
    RunOutput out;
    Report& rep = out.report;
    rep.id = s.run;
    auto t0 = std::chrono::steady_clock::now();
    if (s.run == "osc2") {
        systems::Osc2Params p;
        p.quad_tol = s.quad_tol;
        if (s.grid > 0) p.ppu = s.grid;
        ChainOptions o = chain_from(s, {});
        systems::Osc2Report r = systems::run_osc2(p, o);
        rep = report_osc2(r, p, o);
        out.traces.push_back({"up", r.up});
        out.traces.push_back({"down", r.down});
        out.solutions.push_back({"lower", r.up.result});
        out.solutions.push_back({"upper", r.down.result});
        out.grid = r.up.grid;
        return out;
    }
    if (s.run == "quadstep") {
        systems::QuadstepParams p;
        if (!s.H.empty()) p.H = Poly(s.H);
        if (s.T > 0) p.T = int(s.T);
        if (s.grid > 0) p.ppu = s.grid;
        ChainOptions o = chain_from(s, systems::quadstep_chain_options());
        CauchySystem S = systems::quadstep(p);
        Solutions sol = smallest_greatest(S, systems::quadstep_bracket(p), o);
        RegulatedFn y = systems::quadstep_closed_form(p);
        std::string hs;
        for (size_t i = 0; i < p.H.c.size(); ++i) hs += (i ? "," : "") + p.H.c[i].str();
        rep.params = {{"H", hs}, {"T", p.T}, {"grid", p.ppu}, {"chain", opts_json(o)}};
        solutions_out(out, sol, o);
        double el = grid_error(sol.lower[0], y, S.grid), eu = grid_error(sol.upper[0], y, S.grid);
        rep.outputs["closed_form_error"] = {{"lower", approx_num(el, o.verify_tol)}, {"upper", approx_num(eu, o.verify_tol)}};
        if (auto yp = y.to_poly()) rep.outputs["closed_form_at_1"] = exact_num((*yp)(Rat(1)));
        if (!(el <= o.verify_tol && eu <= o.verify_tol)) {
            rep.ok = false;
            rep.failures.push_back("solution differs from the closed form");
        }
        out.solutions.push_back({"closed_form", {y}});
        out.grid = S.grid;
    } else if (s.run == "uniqueness") {
        int T = s.T > 0 ? int(s.T) : 3;
        double ppu = s.grid > 0 ? s.grid : 4096;
        MajorantOp M = systems::quadstep_majorant(T, ppu);
        UniqOptions o;
        if (s.tol) o.tol = *s.tol;
        if (s.max_steps) o.max_steps = *s.max_steps;
        if (s.max_omega) o.max_omega = *s.max_omega;
        UniqResult u = uniqueness_chain(M, o);
        rep.params = {{"T", T}, {"grid", ppu}, {"tol", o.tol}, {"max_steps", o.max_steps}, {"max_omega", o.max_omega}};
        rep.outputs["certified"] = u.certified;
        rep.outputs["final_sup"] = approx_num(u.final_sup, o.tol);
        rep.outputs["trace"] = trace_summary(u.trace, o.tol);
        json prefixes = json::object();
        for (const Stage& st : u.trace.stages) {
            if (st.label.rfind("omega", 0) != 0 || st.val.empty()) continue;
            size_t k = 0;
            while (k < M.grid->size() && st.val[0][k] <= o.tol) ++k;
            prefixes[st.label] = approx_num(M.grid->t[k > 0 ? k - 1 : 0], 1.0 / ppu);
        }
        rep.outputs["zero_prefix"] = prefixes;
        out.traces.push_back({"majorant", u.trace});
        out.grid = M.grid;
        if (!u.certified) {
            rep.ok = false;
            rep.failures.push_back("uniqueness not certified within budget");
        }
    } else if (s.run == "l1minmax") {
        double T = s.T > 0 ? s.T : 1;
        double ppu = s.grid > 0 ? s.grid : 4096;
        CauchySystem S = systems::l1minmax(T, ppu);
        L1Config cfg = systems::l1minmax_config(T);
        cfg.chain = chain_from(s, cfg.chain);
        cfg.seed = s.seed;
        L1Result L = minmax_l1(S, cfg);
        rep.params = {{"T", T}, {"grid", ppu}, {"seed", s.seed}, {"chain", opts_json(cfg.chain)}};
        rep.outputs["R"] = approx_num(L.R, cfg.tol);
        solutions_out(out, L.sol, cfg.chain);
        RegulatedFn id = RegulatedFn::poly(PiecewisePoly(Rat(0), Rat::from_double(T), Poly({Rat(0), Rat(1)})));
        double el = grid_error(L.sol.lower[0], id, S.grid), eu = grid_error(L.sol.upper[0], id, S.grid);
        rep.outputs["closed_form_error"] = {{"lower", approx_num(el, cfg.chain.verify_tol)},
                                            {"upper", approx_num(eu, cfg.chain.verify_tol)}};
        out.grid = S.grid;
    } else if (s.run == "weighted") {
        size_t m = s.m > 0 ? size_t(s.m) : 2;
        double ppu = s.grid > 0 ? s.grid : 512;
        systems::Weighted w = systems::random_weighted(s.seed, m, ppu);
        if (!s.c.empty()) {
            if (s.c.size() != m) throw ConfigError("c must have m entries");
            w.c = s.c;
        }
        CauchySystem S = systems::weighted(w);
        ChainOptions o = chain_from(s, {});
        Solutions sol = smallest_greatest(S, systems::weighted_bracket(w), o);
        rep.params = {{"m", m}, {"grid", ppu}, {"seed", s.seed}, {"c", w.c}, {"chain", opts_json(o)}};
        solutions_out(out, sol, o);
        out.grid = S.grid;
    } else if (s.run == "higher_order" || s.run == "constant") {
        int m = s.m > 0 ? s.m : (s.run == "higher_order" ? 2 : 1);
        double a = s.a, b = s.T > 0 ? s.T : a + 1;
        double ppu = s.grid > 0 ? s.grid : 4096;
        std::vector<double> c = s.c.empty() ? std::vector<double>(size_t(m), 0.0) : s.c;
        if (c.size() != size_t(m)) throw ConfigError("c must have m entries");
        Rat ra = Rat::from_double(a), rb = Rat::from_double(b), rk = Rat::from_double(s.k);
        // primitive of the constant distribution k, vanishing at a
        RegulatedFn kt = RegulatedFn::poly(PiecewisePoly(ra, rb, Poly({-rk * ra, rk})));
        CauchySystem S;
        SubSuperPair pair;
        if (s.run == "higher_order") {
            S = reduce_higher_order(m, [kt](const FnVec&) { return kt; }, c, a, b, ppu);
            double lo = s.has_bounds ? s.lo : s.k, hi = s.has_bounds ? s.hi : s.k;
            pair = higher_order_bounds(m, c, lo, hi, a, b);
        } else {
            S = systems::constant_system(std::vector<RegulatedFn>(size_t(m), kt), c, a, b, ppu);
            FnVec y;
            for (double ci : c) y.push_back(RegulatedFn::constant(ci, Interval::closed(a, b)) + kt);
            pair = {y, y};
        }
        ChainOptions o = chain_from(s, {});
        Solutions sol = smallest_greatest(S, pair, o);
        rep.params = {{"m", m}, {"a", a}, {"T", b}, {"k", s.k}, {"c", c}, {"grid", ppu}, {"chain", opts_json(o)}};
        solutions_out(out, sol, o);
        // closed form of component 1: sum_j c_j (t-a)^(j-1)/(j-1)! + k (t-a)^m / m!
        if (s.run == "higher_order") {
            std::vector<Rat> coef(size_t(m) + 1, Rat(0));
            Rat fact(1);
            for (int j = 0; j < m; ++j) {
                if (j > 0) fact *= Rat(j);
                coef[size_t(j)] = Rat::from_double(c[size_t(j)]) / fact;
            }
            coef[size_t(m)] = rk / (fact * Rat(m));
            // expand in powers of (t - a)
            Poly shift({-ra, Rat(1)}), acc, pw({Rat(1)});
            for (int j = 0; j <= m; ++j) {
                acc = acc + coef[size_t(j)] * pw;
                pw = pw * shift;
            }
            RegulatedFn y = RegulatedFn::poly(PiecewisePoly(ra, rb, acc));
            double el = grid_error(sol.lower[0], y, S.grid), eu = grid_error(sol.upper[0], y, S.grid);
            rep.outputs["closed_form_error"] = {{"lower", approx_num(el, o.verify_tol)}, {"upper", approx_num(eu, o.verify_tol)}};
            if (!(el <= o.verify_tol && eu <= o.verify_tol)) {
                rep.ok = false;
                rep.failures.push_back("solution differs from the closed form");
            }
        }
        out.grid = S.grid;
    }
    rep.outputs["seconds"] = measured(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return out;
}

} // namespace lrp::io
