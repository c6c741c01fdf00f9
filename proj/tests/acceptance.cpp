// One PASS/FAIL line per acceptance criterion.
//
// Exit status: 0 when every criterion passes, or when the only failure is
// criterion 7 failing for the known reason (the Alexiewicz norm is not a
// Riesz norm; see README). Any other failure, including a change in how
// criterion 7 fails, gives a nonzero status.
#include "lrp/examples.hpp"
#include "lrp/funcspace.hpp"
#include "lrp/suites.hpp"
#include "lrp/systems.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace lrp;

namespace {

struct Line {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char b[64];
    std::snprintf(b, sizeof b, f, x);
    return b;
}

// Ci(1) and Si(1) by their power series, for closed forms of the two shape integrals
double ci1() {
    double s = 0.5772156649015329, term = 1;
    for (int k = 1; k < 30; ++k) {
        term *= -1.0 / ((2.0 * k - 1) * (2.0 * k));
        s += term / (2.0 * k);
    }
    return s;
}
double si1() {
    double s = 0, term = 1;
    for (int k = 0; k < 30; ++k) {
        if (k > 0) term *= -1.0 / ((2.0 * k) * (2.0 * k + 1));
        s += term / (2.0 * k + 1);
    }
    return s;
}

// grid sup of |f - ref| over values and right limits
double grid_error(const RegulatedFn& f, const std::function<double(double)>& val,
                  const std::function<double(double)>& right, const GridP& g) {
    RegulatedFn s = sample(f, g);
    const SampledFn* sf = s.as_sampled();
    double e = 0;
    for (size_t k = 0; k < g->size(); ++k) {
        double t = g->t[k];
        e = std::max(e, std::fabs(sf->val[k] - val(t)));
        if (k + 1 < g->size()) e = std::max(e, std::fabs(sf->right[k] - right(t)));
    }
    return e;
}

Line suite_line(const suites::SuiteResult& r) {
    Line l;
    l.pass = r.ok();
    std::ostringstream o;
    o << r.name << " suite: " << r.cases << " cases, " << r.checks << " checks, " << r.violations << " violations";
    for (const auto& [k, v] : r.metrics) o << ", " << k << "=" << fmt("%.3g", v);
    o << fmt(" (%.1fs)", r.seconds);
    if (!r.counterexamples.empty()) o << "; first: " << r.counterexamples.front().substr(0, 200);
    l.detail = o.str();
    return l;
}

Line c1() {
    auto t0 = std::chrono::steady_clock::now();
    systems::Osc2Params p;
    p.quad_tol = 1e-10;
    systems::Osc2Report r = systems::run_osc2(p);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double JA = 0.5 + 0.5 * std::cos(1.0) - 0.5 * (std::sin(1.0) - ci1());
    double JB = 0.5 - 0.5 * (std::sin(1.0) + std::cos(1.0) - (std::acos(-1.0) / 2 - si1()));
    bool names = r.upper1 == "arctan(2569/2500)" && r.upper2 == "tanh(12419/10000)" &&
                 r.lower1 == "-arctan(5139/5000)" && r.lower2 == "-tanh(12421/10000)";
    bool quad = std::fabs(r.J_A - JA) <= 1e-10 && std::fabs(r.J_B - JB) <= 1e-10;
    int iu = r.up.stabilization_index, id = r.down.stabilization_index;
    bool idx = iu >= 0 && id >= 0 && iu <= 25 && id <= 25;
    bool fixed = r.up.converged && r.down.converged && r.residual_lower <= 1e-9 && r.residual_upper <= 1e-9;
    Line l;
    l.pass = names && quad && idx && fixed && r.paths_agree && secs < 60;
    l.detail = "y^* = (" + r.upper1 + ", " + r.upper2 + "), y_* = (" + r.lower1 + ", " + r.lower2 + ")" +
               "; stabilization index up " + std::to_string(iu) + ", down " + std::to_string(id) + " (expected 16)" +
               "; residuals " + fmt("%.2g", r.residual_lower) + ", " + fmt("%.2g", r.residual_upper) +
               "; |J_A - closed form| " + fmt("%.2g", std::fabs(r.J_A - JA)) + ", |J_B - closed form| " +
               fmt("%.2g", std::fabs(r.J_B - JB)) + "; scalar and grid paths " +
               (r.paths_agree ? "agree" : "DISAGREE") + fmt("; %.2fs", secs);
    return l;
}

Line c2() {
    CountableStep F = examples::alternating_blocks();
    int bad = 0;
    for (long n = 1; n <= 50; ++n) {
        CountableStep d = F.minus(examples::alternating_blocks_partial(n));
        if (norm_exact(d, NormKind::Alexiewicz) != Rat(1, n + 1) - Rat(1, n + 2)) ++bad;
        if (norm_exact(d, NormKind::L1) != Rat(1, n + 1)) ++bad;
    }
    Line l;
    l.pass = bad == 0;
    l.detail = "n = 1..50: ||F - F_n||_A = 1/(n+1) - 1/(n+2) and ||F - F_n||_1 = 1/(n+1) in exact arithmetic, " +
               std::to_string(bad) + " mismatches";
    return l;
}

// criterion 7 fails, and must fail only through Alexiewicz Riesz violations;
// the fixed pair is recomputed here
bool c7_known(const suites::SuiteResult& r) {
    auto m = [&](const char* k) {
        auto it = r.metrics.find(k);
        return it == r.metrics.end() ? 0.0 : it->second;
    };
    double a = m("riesz_violations_alexiewicz");
    bool only_alex = a > 0 && m("riesz_violations_l1") == 0 && m("riesz_violations_sup") == 0 &&
                     double(r.violations) == a;
    StepFn one(Rat(0), Rat(1), std::vector<Rat>{Rat(2)}, std::vector<Rat>{Rat(1)});
    StepFn alt(Rat(0), Rat(1), std::vector<Rat>{Rat(1), Rat(2)}, std::vector<Rat>{Rat(1), Rat(-1)});
    bool pair = abs(one) == abs(alt) && norm_exact(one, NormKind::Alexiewicz) == Rat(2) &&
                norm_exact(alt, NormKind::Alexiewicz) == Rat(1);
    return only_alex && pair;
}

Line c8() {
    systems::QuadstepParams p;   // H = t^2, T = 5, 4096 per unit
    CauchySystem S = systems::quadstep(p);
    Solutions sol = smallest_greatest(S, systems::quadstep_bracket(p), systems::quadstep_chain_options());
    // y = H - t (H(1) - H) / (1 - t) = -t on [0, 1], then -1 + i (i + 1) / 2 on (i, i + 1]
    auto y = [](double t) { return t <= 1 ? -t : -1 + std::ceil(t - 1) * (std::ceil(t - 1) + 1) / 2; };
    auto yr = [](double t) { return t < 1 ? -t : -1 + std::floor(t) * (std::floor(t) + 1) / 2; };
    double el = grid_error(sol.lower[0], y, yr, S.grid), eu = grid_error(sol.upper[0], y, yr, S.grid);
    MajorantOp M = systems::quadstep_majorant(p.T, p.ppu);
    UniqResult u = uniqueness_chain(M);
    Line l;
    l.pass = el <= 1e-9 && eu <= 1e-9 && u.certified;
    l.detail = "grid sup-error of y_* " + fmt("%.2g", el) + ", of y^* " + fmt("%.2g", eu) + " on [0, 5] (" +
               std::to_string(S.grid->size()) + " nodes); uniqueness chain " +
               (u.certified ? "certified" : "NOT certified") + " after " + std::to_string(u.trace.omega_stages) +
               " omega stages, final sup " + fmt("%.2g", u.final_sup);
    return l;
}

Line c10() {
    double worst = 0;
    std::string parts;
    struct Case { std::vector<double> c; double k; };
    for (const Case& cs : {Case{{1, 2}, 0}, Case{{0, 0}, 3}, Case{{1, 2}, -2.5}}) {
        Rat rk = Rat::from_double(cs.k);
        RegulatedFn kt = RegulatedFn::poly(PiecewisePoly(Rat(0), Rat(1), Poly({Rat(0), rk})));
        CauchySystem S = reduce_higher_order(2, [kt](const FnVec&) { return kt; }, cs.c, 0, 1);
        Solutions sol = smallest_greatest(S, higher_order_bounds(2, cs.c, cs.k, cs.k, 0, 1));
        double c1 = cs.c[0], c2 = cs.c[1], k = cs.k;
        auto y = [=](double t) { return c1 + c2 * t + k * t * t / 2; };
        double e = std::max(grid_error(sol.lower[0], y, y, S.grid), grid_error(sol.upper[0], y, y, S.grid));
        worst = std::max(worst, e);
        parts += (parts.empty() ? "" : ", ") + std::string("c=(") + fmt("%g", c1) + "," + fmt("%g", c2) + ") k=" +
                 fmt("%g", k) + ": " + fmt("%.2g", e);
    }
    Line l;
    l.pass = worst <= 1e-9;
    l.detail = "m = 2, y = c1 + c2 t + k t^2 / 2 on [0, 1]; grid errors " + parts;
    return l;
}

} // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const unsigned seed = 1;
    int unexpected = 0, failed = 0;
    auto report = [&](int n, const Line& l, bool known_failure = false) {
        std::printf("criterion %d: %s  %s\n", n, l.pass ? "PASS" : "FAIL", l.detail.c_str());
        if (!l.pass) {
            ++failed;
            if (known_failure)
                std::printf("criterion %d: known failure: the Alexiewicz norm is not a Riesz norm "
                            "(|F| = |G| for F = 1 on (0,2], G = chi_(0,1] - chi_(1,2], yet ||F||_A = 2 > 1 = ||G||_A); "
                            "all other parts hold\n",
                            n);
            else
                ++unexpected;
        }
    };

    report(1, c1());
    report(2, c2());
    report(3, suite_line(suites::approx(seed, 50)));
    report(4, suite_line(suites::gauge(seed, 1000)));
    report(5, suite_line(suites::ftc(seed, 100)));
    report(6, suite_line(suites::parts(seed, 200)));
    suites::SuiteResult lat = suites::lattice(seed, 1000);
    report(7, suite_line(lat), !lat.ok() && c7_known(lat));
    report(8, c8());
    report(9, suite_line(suites::solver(seed, 50)));
    report(10, c10());

    std::printf("acceptance: %d of 10 criteria pass; %d unexpected failures\n", 10 - failed, unexpected);
    return unexpected == 0 ? 0 : 1;
}
