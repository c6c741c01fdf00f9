#include "lrp/suites.hpp"

#include "lrp/examples.hpp"
#include "lrp/gauge.hpp"
#include "lrp/integral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace lrp::suites {

bool SuiteResult::expect(bool cond, const std::function<std::string()>& what) {
    ++checks;
    if (!cond) {
        ++violations;
        if (counterexamples.size() < 8) counterexamples.push_back(what());
    }
    return cond;
}

void SuiteResult::worst(const std::string& key, double v) {
    auto it = metrics.find(key);
    if (it == metrics.end() || v > it->second || std::isnan(v)) metrics[key] = v;
}

Rat random_rat(std::mt19937& rng, long range, long max_den) {
    long q = std::uniform_int_distribution<long>(1, max_den)(rng);
    long p = std::uniform_int_distribution<long>(-range * q, range * q)(rng);
    return Rat(p, q);
}

namespace {

// k distinct rationals strictly inside (a, b), sorted
std::vector<Rat> random_cuts(std::mt19937& rng, const Rat& a, const Rat& b, int k) {
    std::vector<Rat> c;
    for (int i = 0; i < k; ++i) {
        long d = std::uniform_int_distribution<long>(2, 12)(rng);
        long u = std::uniform_int_distribution<long>(1, d - 1)(rng);
        c.push_back(a + (b - a) * Rat(u, d));
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

Rat random_point(std::mt19937& rng, const Rat& a, const Rat& b) {
    long d = std::uniform_int_distribution<long>(1, 24)(rng);
    long u = std::uniform_int_distribution<long>(0, d)(rng);
    return a + (b - a) * Rat(u, d);
}

std::string show(const StepFn& s) {
    std::ostringstream os;
    os << "[" << s.lo().str() << ": " << s.base_value().str();
    for (size_t i = 0; i < s.size(); ++i) os << " | (" << s.left(i).str() << "," << s.end(i).str() << "] " << s.val(i).str();
    os << "]";
    return os.str();
}

using Clock = std::chrono::steady_clock;

SuiteResult start(const char* name, unsigned seed, size_t count) {
    SuiteResult r;
    r.name = name;
    r.seed = seed;
    r.count = count;
    return r;
}

void finish(SuiteResult& r, Clock::time_point t0) {
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

StepFn random_step(std::mt19937& rng, const Rat& a, const Rat& b, int max_cells, long range) {
    int k = std::uniform_int_distribution<int>(1, max_cells)(rng);
    std::vector<Rat> ends = random_cuts(rng, a, b, k - 1);
    ends.push_back(b);
    std::vector<Rat> vals;
    for (size_t i = 0; i < ends.size(); ++i) vals.push_back(random_rat(rng, range, 6));
    Rat base = std::bernoulli_distribution(0.5)(rng) ? vals.front() : random_rat(rng, range, 6);
    return StepFn(a, base, ends, vals);
}

PiecewisePoly random_piecewise_poly(std::mt19937& rng, const Rat& a, const Rat& b, int max_cells, int max_degree) {
    int k = std::uniform_int_distribution<int>(1, max_cells)(rng);
    std::vector<Rat> ends = random_cuts(rng, a, b, k - 1);
    ends.push_back(b);
    std::vector<Poly> polys;
    for (size_t i = 0; i < ends.size(); ++i) {
        int d = std::uniform_int_distribution<int>(0, max_degree)(rng);
        std::vector<Rat> c;
        for (int j = 0; j <= d; ++j) c.push_back(random_rat(rng, 3, 4));
        polys.push_back(Poly(c));
    }
    Rat base = polys.front()(a);
    return PiecewisePoly(a, base, ends, polys);
}

// ---------------------------------------------------------------------------
// norms

SuiteResult norms(unsigned seed, size_t count) {
    auto t0 = Clock::now();
    SuiteResult r = start("norms", seed, count);
    std::mt19937 rng(seed);
    CountableStep F = examples::alternating_blocks();
    for (long n = 1; n <= long(count); ++n) {
        ++r.cases;
        CountableStep D = F.minus(examples::alternating_blocks_partial(n));
        Rat A = norm_exact(D, NormKind::Alexiewicz), L = norm_exact(D, NormKind::L1);
        Rat wantA = Rat(1, n + 1) - Rat(1, n + 2), wantL = Rat(1, n + 1);
        r.expect(A == wantA, [&] { return "n=" + std::to_string(n) + ": ||F-F_n||_A = " + A.str() + ", want " + wantA.str(); });
        r.expect(L == wantL, [&] { return "n=" + std::to_string(n) + ": ||F-F_n||_1 = " + L.str() + ", want " + wantL.str(); });
    }
    // Alexiewicz norm as the sup over subintervals, attained at the cumulative extrema
    Rat a(0), b(2);
    std::vector<Interval> ex{Interval::closed(0, 0.5), Interval::closed(0, 1), Interval::closed(0, 1.5), Interval::closed(0, 2)};
    for (size_t c = 0; c < count; ++c) {
        ++r.cases;
        StepFn f = random_step(rng, a, b, 8, 5);
        Rat N = norm_exact(f, NormKind::Alexiewicz);
        Rat best(0);
        for (int k = 0; k < 200; ++k) {
            Rat x = random_point(rng, a, b), y = random_point(rng, a, b);
            Rat v = abs(f.integral(x, y));
            best = max(best, v);
            r.expect(v <= N, [&] { return "subinterval integral " + v.str() + " exceeds ||f||_A = " + N.str() + " for " + show(f); });
        }
        // the extrema of the cumulative integral sit at cell ends
        auto [mx, mn] = f.cumulative_extrema();
        Rat at_mx = f.lo(), at_mn = f.lo();
        for (const Rat& e : f.ends()) {
            Rat v = f.cumulative(e);
            if (v == mx) at_mx = e;
            if (v == mn) at_mn = e;
        }
        r.expect(abs(f.integral(at_mn, at_mx)) == N && mx - mn == N,
                 [&] { return "extrema do not attain ||f||_A for " + show(f); });
        NormValue nv = norm(RegulatedFn::step(f), NormKind::Alexiewicz, Interval::closed(0, 2));
        r.expect(nv.exact && *nv.exact == N, [&] { return "norm() differs from the exact Alexiewicz norm"; });
        // local metric: identity and triangle inequality
        StepFn g = random_step(rng, a, b, 8, 5), h = random_step(rng, a, b, 8, 5);
        RegulatedFn F1 = RegulatedFn::step(f), G1 = RegulatedFn::step(g), H1 = RegulatedFn::step(h);
        for (NormKind kind : {NormKind::Sup, NormKind::L1, NormKind::Alexiewicz}) {
            double dfh = local_metric(F1, H1, kind, ex).value, dfg = local_metric(F1, G1, kind, ex).value,
                   dgh = local_metric(G1, H1, kind, ex).value;
            r.expect(dfh <= dfg + dgh + 1e-12, [&] { return "local metric triangle inequality fails (" + to_string(kind) + ")"; });
            r.expect(local_metric(F1, F1, kind, ex).value == 0, [&] { return "local metric d(F, F) != 0"; });
        }
    }
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------------------
// lattice, Riesz norms, algebra product, LL absoluteness

SuiteResult lattice(unsigned seed, size_t count) {
    auto t0 = Clock::now();
    SuiteResult r = start("lattice", seed, count);
    std::mt19937 rng(seed);
    Rat a(0), b(2);
    const NormKind kinds[] = {NormKind::Alexiewicz, NormKind::L1, NormKind::Sup};
    size_t riesz_fail[3] = {0, 0, 0};
    for (size_t c = 0; c < count; ++c) {
        ++r.cases;
        StepFn F = random_step(rng, a, b, 8, 5), G = random_step(rng, a, b, 8, 5), K = random_step(rng, a, b, 8, 5);
        auto ctx = [&] { return " for F=" + show(F) + " G=" + show(G); };
        // submultiplicative sup norm, also through the LR product
        Rat lhs = (F * G).sup_norm(), rhs = F.sup_norm() * G.sup_norm();
        r.expect(lhs <= rhs, [&] { return "||FG|| = " + lhs.str() + " > " + rhs.str() + ctx(); });
        Distribution pf = Distribution::from_primitive(RegulatedFn::step(F), Space::LR);
        Distribution pg = Distribution::from_primitive(RegulatedFn::step(G), Space::LR);
        Distribution pfg = product(pf, pg);
        const StepFn* prod = pfg.primitive.as_step();
        r.expect(prod && *prod == F * G, [&] { return "product primitive is not F G" + ctx(); });

        // lattice identities
        r.expect(F == pos(F) - neg(F), [&] { return "f != f+ - f-" + ctx(); });
        r.expect(abs(F) == pos(F) + neg(F), [&] { return "|f| != f+ + f-" + ctx(); });
        r.expect(abs(F) == join(F, -F), [&] { return "|f| != f v -f" + ctx(); });
        r.expect(join(F, G) == join(G, F) && meet(F, G) == meet(G, F), [&] { return "lattice ops not commutative" + ctx(); });
        r.expect(join(join(F, G), K) == join(F, join(G, K)) && meet(meet(F, G), K) == meet(F, meet(G, K)),
                 [&] { return "lattice ops not associative" + ctx(); });
        r.expect(join(F, meet(F, G)) == F && meet(F, join(F, G)) == F, [&] { return "absorption fails" + ctx(); });
        r.expect(F.leq(join(F, G)) && meet(F, G).leq(G), [&] { return "join/meet not bounds" + ctx(); });
        // RegulatedFn versions agree with the step versions
        RegulatedFn rf = RegulatedFn::step(F), rg = RegulatedFn::step(G);
        auto same = [](const RegulatedFn& x, const StepFn& y) {
            auto p = x.to_poly();
            return p && p->is_step() && p->to_step() == y;
        };
        r.expect(same(join(rf, rg), join(F, G)) && same(meet(rf, rg), meet(F, G)) && same(abs(rf), abs(F)) &&
                     same(pos(rf), pos(F)) && same(neg(rf), neg(F)),
                 [&] { return "RegulatedFn lattice ops differ from exact step ops" + ctx(); });

        // Riesz: |F'| <= |F| implies ||F'|| <= ||F||; F' = F U with |U| <= 1
        StepFn U = random_step(rng, a, b, 8, 1).map([](const Rat& v) { return max(Rat(-1), min(Rat(1), v)); });
        StepFn Fs = F * U;
        r.expect(abs(Fs).leq(abs(F)), [&] { return "constructed |F U| <= |F| fails" + ctx(); });
        auto riesz = [&](const StepFn& lo, const StepFn& hi) {
            for (NormKind k : kinds) {
                Rat n1 = norm_exact(lo, k), n2 = norm_exact(hi, k);
                if (!r.expect(n1 <= n2, [&] {
                        return "Riesz fails for " + to_string(k) + ": " + n1.str() + " > " + n2.str() + " for small=" +
                               show(lo) + " large=" + show(hi);
                    }))
                    r.worst("riesz_violations_" + to_string(k), double(++riesz_fail[int(k)]));
            }
        };
        riesz(Fs, F);
        if (abs(F).leq(abs(G))) riesz(F, G);

        // LL absoluteness: normalized primitive P, |f| = |P|', f+ = P+', f- = P-'
        std::vector<Rat> vals = F.vals();
        vals.front() = Rat(0);
        StepFn P(a, Rat(0), F.ends(), vals);
        RegulatedFn rp = RegulatedFn::step(P);
        Distribution f = Distribution::from_primitive(rp, Space::LL, true);
        Distribution fa = Distribution::from_primitive(abs(rp), Space::LL, true);
        Distribution fp = Distribution::from_primitive(pos(rp), Space::LL, true);
        Distribution fn = Distribution::from_primitive(neg(rp), Space::LL, true);
        for (int k = 0; k < 4; ++k) {
            Rat x = k == 0 ? a : random_point(rng, a, b), y = k == 0 ? b : random_point(rng, a, b);
            if (y < x) std::swap(x, y);
            Rat I = primitive_integral_exact(f, x, y), Ia = primitive_integral_exact(fa, x, y);
            Rat Ip = primitive_integral_exact(fp, x, y), In = primitive_integral_exact(fn, x, y);
            r.expect(I == Ip - In, [&] { return "int f != int f+ - int f- on [" + x.str() + "," + y.str() + "] for P=" + show(P); });
            r.expect(abs(I) >= abs(Ia), [&] { return "|int f| < |int |f|| on [" + x.str() + "," + y.str() + "] for P=" + show(P); });
        }
        r.expect(norm_exact(P, NormKind::L1) == norm_exact(abs(P), NormKind::L1), [&] { return "|| |f| ||_1 != ||f||_1"; });
    }
    // fixed pair with |F| = |G|: 1 on (0, 2] against chi_(0,1] - chi_(1,2]
    {
        ++r.cases;
        StepFn one(a, Rat(1), std::vector<Rat>{b}, std::vector<Rat>{Rat(1)});
        StepFn alt(a, Rat(1), std::vector<Rat>{Rat(1), b}, std::vector<Rat>{Rat(1), Rat(-1)});
        for (NormKind k : kinds) {
            Rat n1 = norm_exact(one, k), n2 = norm_exact(alt, k);
            if (!r.expect(n1 <= n2, [&] {
                    return "Riesz fails for " + to_string(k) + " with |F| = |G|: F = 1 on (0,2] has " + n1.str() +
                           ", G = chi_(0,1] - chi_(1,2] has " + n2.str();
                }))
                r.worst("riesz_violations_" + to_string(k), double(++riesz_fail[int(k)]));
        }
    }
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------------------
// integration by parts

namespace {

// int_x^y F'(t) g(t) dt by Gauss-Kronrod on the cells of the density
double direct_fg(const Poly& F, const Multiplier& M, const StepFn& h, double x, double y) {
    std::vector<double> dF;
    for (const Rat& c : F.derivative().c) dF.push_back(c.to_double());
    auto df = [&](double t) {
        double v = 0;
        for (size_t k = dF.size(); k-- > 0;) v = v * t + dF[k];
        return v;
    };
    std::vector<double> cuts{x};
    for (const Rat& e : h.ends())
        if (e.to_double() > x && e.to_double() < y) cuts.push_back(e.to_double());
    cuts.push_back(y);
    double acc = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        // g is affine on the cell: g(l) + h (t - l)
        double l = cuts[i], gl = M(l), hv = h(0.5 * (cuts[i] + cuts[i + 1]));
        acc += gauss_kronrod([&](double t) { return df(t) * (gl + hv * (t - l)); }, l, cuts[i + 1], 1e-13).value;
    }
    return acc;
}

} // namespace

SuiteResult parts(unsigned seed, size_t count) {
    auto t0 = Clock::now();
    SuiteResult r = start("parts", seed, count);
    std::mt19937 rng(seed);
    for (size_t c = 0; c < count; ++c) {
        ++r.cases;
        Rat a(0), b = Rat(long(std::uniform_int_distribution<int>(2, 4)(rng)), 2);
        int deg = std::uniform_int_distribution<int>(0, 5)(rng);
        std::vector<Rat> pc;
        for (int j = 0; j <= deg; ++j) pc.push_back(random_rat(rng, 3, 4));
        Poly Fp(pc);
        StepFn h = random_step(rng, a, b, 6, 3);
        Rat anchor = random_point(rng, a, b);
        Rat x = a, y = b;
        if (c % 2 == 1) {
            x = random_point(rng, a, b);
            y = random_point(rng, a, b);
            if (y < x) std::swap(x, y);
            if (x == y) y = b, x = a;
        }
        Multiplier M = Multiplier::from_density(RegulatedFn::step(h), anchor.to_double());
        RegulatedFn Fr = RegulatedFn::poly(PiecewisePoly(a, b, Fp));
        double oracle = direct_fg(Fp, M, h, x.to_double(), y.to_double());
        // exact oracle: cellwise polynomial integral of F' g
        PiecewisePoly dF(a, b, Fp.derivative());
        // parts takes double endpoints
        Rat exact = (dF * *M.g.to_poly()).integral(Rat::from_double(x.to_double()), Rat::from_double(y.to_double()));
        auto ctx = [&] {
            std::string s = "F=";
            for (auto& q : Fp.c) s += q.str() + " ";
            return s + "h=" + show(h) + " anchor=" + anchor.str() + " on [" + x.str() + "," + y.str() + "]";
        };
        for (Space tag : {Space::LD, Space::LL}) {
            Distribution f = Distribution::from_primitive(Fr, tag);
            PartsResult p;
            try {
                p = parts(f, M, x.to_double(), y.to_double());
            } catch (const Error& e) {
                r.expect(false, [&] { return std::string("parts threw: ") + e.what() + " " + ctx(); });
                continue;
            }
            double err = std::fabs(p.value - oracle);
            r.worst("max_quadrature_deviation", err);
            r.expect(err <= 1e-8, [&] { return "parts " + std::to_string(p.value) + " vs quadrature " + std::to_string(oracle) + " " + ctx(); });
            r.expect(p.exact && *p.exact == exact, [&] { return "parts not exactly F(b)g(b) - int F h " + ctx(); });
            // the bound, recomputed here for the normalised primitive
            Poly Ft = Fp - Poly::constant(Fp(x));
            RegulatedFn Frt = RegulatedFn::poly(PiecewisePoly(a, b, Ft));
            double base = std::fabs(Ft(y).to_double()) * std::fabs(M(y.to_double()));
            StepFn hs = h.restrict(x, y);
            double bound = tag == Space::LD
                               ? base + norm(Frt, NormKind::Alexiewicz, Interval::closed(x.to_double(), y.to_double())).value *
                                            (hs.sup_norm().to_double() + M.var_h)
                               : base + norm(Frt, NormKind::L1, Interval::closed(x.to_double(), y.to_double())).value *
                                            hs.sup_norm().to_double();
            r.expect(std::fabs(p.value) <= bound * (1 + 1e-12) + 1e-14,
                     [&] { return to_string(tag) + " bound violated: " + std::to_string(p.value) + " vs " + std::to_string(bound) + " " + ctx(); });
            if (bound > 0) r.worst(tag == Space::LD ? "max_bound_ratio_LD" : "max_bound_ratio_LL", std::fabs(p.value) / bound);
        }
    }
    // delta against g(x) = x + 1, and the zero multiplier
    {
        ++r.cases;
        Distribution d = Distribution::dirac();
        RegulatedFn one = RegulatedFn::step(StepFn(Rat(-1), Rat(1), Rat(1)));
        PartsResult p = parts(d, Multiplier::from_density(one, -1), -1, 1);
        r.expect(p.exact && *p.exact == Rat(1), [&] { return "int g d(delta) != g(0) = 1"; });
        RegulatedFn zero = RegulatedFn::step(StepFn(Rat(-1), Rat(1), Rat(0)));
        PartsResult z = parts(d, Multiplier::from_density(zero, 0), -1, 1);
        r.expect(z.value == 0, [&] { return "zero multiplier gives nonzero"; });
    }
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------------------
// left-gauge Stieltjes integral

namespace {

Rat right_val(const PiecewisePoly& g, const Rat& p) { return p == g.hi() ? g(p) : *g.right_limit(p); }

// sum a_i [g(y_i+) - g(x_i+)] over the cells of F on (x, y]
Rat measure_sum(const StepFn& F, const PiecewisePoly& g, const Rat& x, const Rat& y) {
    StepFn s = F.restrict(x, y);
    Rat acc(0);
    for (size_t i = 0; i < s.size(); ++i) acc += s.val(i) * (right_val(g, s.end(i)) - right_val(g, s.left(i)));
    return acc;
}

Rat exact_stieltjes(const StepFn& F, const PiecewisePoly& g, const Rat& x, const Rat& y) {
    return *stieltjes_exact(RegulatedFn::step(F), RegulatedFn::poly(g), x, y).exact;
}

PiecewisePoly random_multiplier(std::mt19937& rng, const Rat& a, const Rat& b) {
    if (std::bernoulli_distribution(0.5)(rng)) return PiecewisePoly(random_step(rng, a, b, 8, 4));
    return random_piecewise_poly(rng, a, b, 5, 3);
}

} // namespace

SuiteResult gauge(unsigned seed, size_t count) {
    auto t0 = Clock::now();
    SuiteResult r = start("gauge", seed, count);
    std::mt19937 rng(seed);
    Rat a(0), b(2);
    // exact agreement with the measure-sum oracle
    for (size_t c = 0; c < (count + 1) / 2; ++c) {
        ++r.cases;
        StepFn F = random_step(rng, a, b, 8, 5);
        PiecewisePoly g = random_multiplier(rng, a, b);
        Rat x = a, y = b;
        if (c % 3 != 0) {
            x = random_point(rng, a, b);
            y = random_point(rng, a, b);
            if (y < x) std::swap(x, y);
            if (x == y) x = a, y = b;
        }
        Rat s = exact_stieltjes(F, g, x, y), o = measure_sum(F, g, x, y);
        r.expect(s == o, [&] { return "stieltjes " + s.str() + " != measure sum " + o.str() + " for F=" + show(F) + " on [" + x.str() + "," + y.str() + "]"; });
    }
    for (size_t c = 0; c < count; ++c) {
        ++r.cases;
        StepFn F1 = random_step(rng, a, b, 6, 5), F2 = random_step(rng, a, b, 6, 5);
        PiecewisePoly g1 = random_multiplier(rng, a, b), g2 = random_multiplier(rng, a, b);
        Rat al = random_rat(rng, 3, 4), be = random_rat(rng, 3, 4), ga = random_rat(rng, 3, 4), de = random_rat(rng, 3, 4);
        // bilinearity, exact
        Rat lhs = exact_stieltjes(al * F1 + be * F2, ga * g1 + de * g2, a, b);
        Rat rhs = al * ga * exact_stieltjes(F1, g1, a, b) + al * de * exact_stieltjes(F1, g2, a, b) +
                  be * ga * exact_stieltjes(F2, g1, a, b) + be * de * exact_stieltjes(F2, g2, a, b);
        r.expect(lhs == rhs, [&] { return "bilinearity fails: " + lhs.str() + " vs " + rhs.str(); });
        // bound |int F dg| <= ||F||_inf Vg
        Rat v = exact_stieltjes(F1, g1, a, b);
        Variation V = variation(RegulatedFn::poly(g1), a.to_double(), b.to_double());
        if (V.exact) {
            r.expect(abs(v) <= F1.sup_norm() * *V.exact, [&] { return "bound fails: |" + v.str() + "| > ||F|| Vg for F=" + show(F1); });
        } else {
            double bd = F1.sup_norm().to_double() * V.value;
            r.expect(std::fabs(v.to_double()) <= bd * (1 + 1e-12) + 1e-14, [&] { return "bound fails on polynomial multiplier"; });
        }
        // additivity over [a, c] + [c, b], with c sometimes a jump point
        Rat m = random_point(rng, a, b);
        if (c % 4 == 0 && F1.size() > 1) m = F1.end(0);
        if (c % 4 == 1 && g1.size() > 1) m = g1.end(0);
        Rat left = m == a ? Rat(0) : exact_stieltjes(F1, g1, a, m);
        Rat right = m == b ? Rat(0) : exact_stieltjes(F1, g1, m, b);
        r.expect(left + right == v, [&] { return "additivity fails at c=" + m.str(); });
        // tagged sums on a fine partition obey the same bound
        if (c % 4 == 2) {
            double w = 1.0 / double(std::uniform_int_distribution<int>(3, 40)(rng));
            LeftPartition P = fine_partition(LeftGauge::constant(w), 0, 2);
            std::uniform_real_distribution<double> U(0, 1);
            P = retag(P, [&](double x, double y) { double t = x + (y - x) * U(rng); return t > x ? t : y; });
            StieltjesResult s = stieltjes_sum(RegulatedFn::step(F1), RegulatedFn::poly(g1), P);
            double bd = F1.sup_norm().to_double() * V.value;
            r.expect(std::fabs(s.value) <= bd * (1 + 1e-12) + 1e-14, [&] { return "tagged sum exceeds ||F|| Vg"; });
        }
    }
    // numeric path: F = t sin(1/t) against step multipliers; atoms F(p) (g(p+) - g(p))
    RegulatedFn ts = examples::t_sin_inv(1);
    for (size_t c = 0; c < std::max<size_t>(1, count / 50); ++c) {
        ++r.cases;
        StepFn g = random_step(rng, Rat(0), Rat(1), 6, 3);
        double o = 0;
        for (size_t i = 0; i + 1 < g.size(); ++i) o += ts.value(g.end(i).to_double()) * (g.val(i + 1) - g.val(i)).to_double();
        StieltjesResult s = stieltjes(ts, RegulatedFn::step(g), 0, 1, 1e-6);
        double dev = std::fabs(s.value - o);
        r.worst("numeric_path_deviation", dev);
        r.expect(dev <= s.error + 1e-12, [&] { return "numeric Stieltjes off by " + std::to_string(dev) + " > error " + std::to_string(s.error); });
    }
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------------------
// solver comparison

namespace {

// largest m_i(t) - M_i(t) over the nodes of grid (values and right limits)
double excess(const FnVec& lo, const FnVec& hi, const GridP& g) {
    double e = -INFINITY;
    for (size_t i = 0; i < lo.size(); ++i) {
        RegulatedFn a = sample(lo[i], g), b = sample(hi[i], g);
        const SampledFn *sa = a.as_sampled(), *sb = b.as_sampled();
        for (size_t k = 0; k < g->size(); ++k) e = std::max({e, sa->val[k] - sb->val[k], sa->right[k] - sb->right[k]});
    }
    return e;
}

// worst order violation between consecutive stored stages
double stage_violation(const IterationTrace& t) {
    double worst = -INFINITY;
    const Stage* prev = nullptr;
    for (const Stage& s : t.stages) {
        if (s.val.empty() || s.val[0].empty()) continue;
        if (prev) {
            for (size_t i = 0; i < s.val.size(); ++i)
                for (size_t k = 0; k < s.val[i].size(); ++k) {
                    double d0 = prev->val[i][k] - s.val[i][k], d1 = prev->right[i][k] - s.right[i][k];
                    if (t.dir == Direction::Down) d0 = -d0, d1 = -d1;
                    double scale = 1 + std::fabs(s.val[i][k]);
                    worst = std::max({worst, d0 / scale, d1 / scale});
                }
        }
        prev = &s;
    }
    return worst;
}

} // namespace

SuiteResult solver(unsigned seed, size_t count) {
    auto t0 = Clock::now();
    SuiteResult r = start("solver", seed, count);
    ChainOptions opt;
    for (size_t c = 0; c < count; ++c) {
        ++r.cases;
        unsigned s1 = seed * 7919u + unsigned(c), s2 = seed * 104729u + unsigned(c) + 1;
        systems::Weighted w = systems::random_weighted(s1);
        systems::Weighted w2 = systems::dominate(w, s2);
        std::string tag = "seed pair (" + std::to_string(s1) + "," + std::to_string(s2) + ")";
        Solutions A, B;
        CauchySystem S1 = systems::weighted(w), S2 = systems::weighted(w2);
        try {
            A = smallest_greatest(S1, systems::weighted_bracket(w), opt);
            B = smallest_greatest(S2, systems::weighted_bracket(w2), opt);
        } catch (const Error& e) {
            r.expect(false, [&] { return tag + ": " + e.what(); });
            continue;
        }
        for (const Solutions* s : {&A, &B}) {
            r.expect(s->up.converged && s->down.converged, [&] { return tag + ": chain did not converge"; });
            r.expect(s->residual_lower <= opt.verify_tol && s->residual_upper <= opt.verify_tol,
                     [&] { return tag + ": residual above verify_tol"; });
            r.worst("max_residual", std::max(s->residual_lower, s->residual_upper));
            r.expect(s->order_gap <= opt.verify_tol, [&] { return tag + ": y_* > y^*"; });
            for (const IterationTrace* t : {&s->up, &s->down}) {
                double v = stage_violation(*t);
                r.worst("max_stage_violation", v);
                r.expect(v <= opt.mono_tol, [&] { return tag + ": chain not monotone (" + std::to_string(v) + ")"; });
            }
        }
        double el = excess(A.lower, B.lower, S1.grid), eu = excess(A.upper, B.upper, S1.grid);
        r.worst("max_comparison_excess", std::max(el, eu));
        r.expect(el <= opt.verify_tol, [&] { return tag + ": y_* not below y_*' (" + std::to_string(el) + ")"; });
        r.expect(eu <= opt.verify_tol, [&] { return tag + ": y^* not below y^*' (" + std::to_string(eu) + ")"; });
    }
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------------------
// step approximation

SuiteResult approx(unsigned seed, size_t count) {
    auto t0 = Clock::now();
    SuiteResult r = start("approx", seed, count);
    std::mt19937 rng(seed);
    std::vector<int> levels;
    for (int n = 2; n <= 64; ++n) levels.push_back(n);
    const int N = 10000;
    auto run = [&](const std::string& name, const RegulatedFn& f, double a, double b) {
        ++r.cases;
        std::vector<double> ts(N), fv(N);
        for (int j = 0; j < N; ++j) {
            ts[size_t(j)] = a + (b - a) * double(j) / double(N - 1);
            fv[size_t(j)] = f.value(ts[size_t(j)]);
        }
        std::vector<StepApprox> sa = step_approximation_levels(f, levels, Interval::closed(a, b));
        for (size_t l = 0; l < levels.size(); ++l) {
            int n = levels[l];
            double err = 0;
            double at = 0;
            for (int j = 0; j < N; ++j) {
                double e = std::fabs(sa[l].step(ts[size_t(j)]) - fv[size_t(j)]);
                if (e > err) err = e, at = ts[size_t(j)];
            }
            r.worst(name + "_max_err_times_n", err * n);
            r.expect(err <= 1.0 / n, [&] {
                return name + " level " + std::to_string(n) + ": sampled error " + std::to_string(err) + " at t=" + io::num17(at);
            });
        }
    };
    examples::Params pcos;
    pcos.m = 4;
    run("cospi_G_m4", examples::cospi_G(pcos), 0, 1);
    examples::Params psaw;
    psaw.m = 5;
    psaw.p = 2;
    run("sawtooth_F_p2_m5", examples::sawtooth_F(psaw), 0, 1);
    for (size_t c = 0; c < count; ++c) {
        StepFn s = random_step(rng, Rat(0), Rat(1), 12, 5);
        run("random_step", RegulatedFn::step(s), 0, 1);
    }
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------------------
// FTC / Hake and finite differences

SuiteResult ftc(unsigned seed, size_t count) {
    auto t0 = Clock::now();
    SuiteResult r = start("ftc", seed, count);
    examples::Params p;
    p.m = 4;
    {
        ++r.cases;
        Distribution f = Distribution::from_primitive_auto(examples::t_times_G(p));
        double v = primitive_integral(f, 0, 1);
        double h = hake(f, HakeSide::LeftEndpoint, 1);
        r.worst("hake_deviation", std::fabs(v - h));
        r.expect(std::fabs(v - h) <= 1e-8, [&] { return "Hake limit " + io::num17(h) + " vs integral " + io::num17(v); });
        // the limit itself: int_eps^1 f for eps -> 0+
        double last = 0;
        for (int k = 1; k <= 12; ++k) {
            double eps = std::pow(10.0, -k);
            last = primitive_integral(f, eps, 1);
        }
        r.worst("eps_limit_deviation", std::fabs(last - v));
        r.expect(std::fabs(last - v) <= 1e-8, [&] { return "int_eps^1 f does not approach the integral"; });
    }
    // check points frac(j * golden ratio), away from small-denominator rationals
    std::vector<double> pts;
    double phi = (std::sqrt(5.0) - 1) / 2;
    for (size_t j = 1; pts.size() < count; ++j) {
        double t = std::fmod(double(j + seed) * phi, 1.0);
        if (t > 1e-3 && t < 1 - 1e-3) pts.push_back(t);
    }
    auto fd = [&](const std::string& name, const RegulatedFn& F, const RegulatedFn& G) {
        ++r.cases;
        FdReport rep = fd_derivative_check(F, G, pts, 1e-3);
        r.worst(name + "_max_deviation", rep.max_deviation);
        r.expect(rep.skipped == 0 && rep.checked == pts.size(),
                 [&] { return name + ": " + std::to_string(rep.checked) + " of " + std::to_string(pts.size()) + " points checked"; });
        r.metrics["points_per_check"] = double(rep.checked);
        r.expect(rep.max_deviation <= 1e-6, [&] { return name + ": max deviation " + io::num17(rep.max_deviation); });
    };
    fd("cospi_F_vs_G_m4", examples::cospi_F(p), examples::cospi_G(p));
    examples::Params p2;
    p2.m = 2;
    fd("cospi_lin_F_vs_G_m2", examples::cospi_lin_F(p2), examples::cospi_lin_G(p2));
    fd("cospi_lin_F_vs_G_m4", examples::cospi_lin_F(p), examples::cospi_lin_G(p));
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() { return {"norms", "lattice", "parts", "gauge", "solver", "approx", "ftc"}; }

size_t default_count(const std::string& name) {
    if (name == "norms") return 50;
    if (name == "lattice") return 1000;
    if (name == "parts") return 200;
    if (name == "gauge") return 1000;
    if (name == "solver") return 50;
    if (name == "approx") return 50;
    if (name == "ftc") return 100;
    throw ConfigError("unknown suite '" + name + "'");
}

SuiteResult run_suite(const std::string& name, unsigned seed, size_t count) {
    if (count == 0) count = default_count(name);
    if (name == "norms") return norms(seed, count);
    if (name == "lattice") return lattice(seed, count);
    if (name == "parts") return parts(seed, count);
    if (name == "gauge") return gauge(seed, count);
    if (name == "solver") return solver(seed, count);
    if (name == "approx") return approx(seed, count);
    if (name == "ftc") return ftc(seed, count);
    throw ConfigError("unknown suite '" + name + "'");
}

io::Report to_report(const SuiteResult& r) {
    io::Report rep;
    rep.id = "suite:" + r.name;
    rep.params = {{"seed", r.seed}, {"count", r.count}};
    rep.outputs["cases"] = io::exact_int((long long)r.cases);
    rep.outputs["checks"] = io::exact_int((long long)r.checks);
    rep.outputs["violations"] = io::exact_int((long long)r.violations);
    io::json m = io::json::object();
    for (const auto& [k, v] : r.metrics) m[k] = io::json{{"decimal", io::dec12(v)}, {"tol", "measured"}};
    rep.outputs["metrics"] = m;
    rep.outputs["seconds"] = io::json{{"decimal", io::dec12(r.seconds)}, {"tol", "measured"}};
    rep.ok = r.ok();
    rep.failures = r.counterexamples;
    return rep;
}

} // namespace lrp::suites
