#include "lrp/systems.hpp"

#include "lrp/funcspace.hpp"
#include "lrp/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace lrp::systems {

namespace {

// int_0^1 f for terms seen at build time; anything else is integrated afresh
struct IntegralTable {
    std::vector<std::pair<RegulatedFn, double>> known;
    double tol = 1e-10;
    double a = 0, b = 1;

    double of(const RegulatedFn& f) const {
        for (auto& [g, v] : known)
            if (identical(f, g)) return v;
        return integrate_regulated(f, a, b, tol).value;
    }
    // int (x - G), cancelling a unit G term of x symbolically
    double minus(const RegulatedFn& x, const RegulatedFn& G) const {
        if (identical(x, G)) return 0;
        if (auto* terms = x.as_lincomb()) {
            double acc = 0;
            bool cancelled = false;
            for (auto& [c, f] : *terms) {
                if (!cancelled && c == 1.0 && identical(f, G)) {
                    cancelled = true;
                    continue;
                }
                acc += c * of(f);
            }
            return cancelled ? acc : acc - of(G);
        }
        return of(x) - of(G);
    }
};

std::string shape_name_a() { return "t(1+cos(1/t))"; }
std::string shape_name_b() { return "t(1-sin(1/t))"; }

RegulatedFn iterate_fn(const RegulatedFn& G, const std::string& gname, double q, const RegulatedFn& shape,
                       const std::string& label) {
    return RegulatedFn::lincomb({{1.0, G}, {q, shape}}).with_label(gname + " + " + label);
}

std::string num_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

long osc2_quantize(double I, double factor) { return long(std::floor(factor * I)); }

std::string coef_name(const char* fn, long k) {
    Rat r(k < 0 ? -k : k, 10000);
    return std::string(k < 0 ? "-" : "") + fn + "(" + r.str() + ")";
}

Osc2 osc2(const Osc2Params& p) {
    Osc2 E;
    examples::Params fp = p.fn;
    fp.a = 0;
    fp.T = 1;
    E.G1 = examples::build_function(p.g1, fp);
    // H1 restricted to [0, 1]: 0 at 0, 1 on (0, 1]
    E.G2 = p.g2 == "heaviside" ? RegulatedFn::step(StepFn(Rat(0), Rat(0), {Rat(1)}, {Rat(1)}))
                               : examples::build_function(p.g2, fp);
    if (E.G1.value(0) != 0 || E.G2.value(0) != 0) throw ConfigError("G_i must vanish at 0");
    E.A = examples::shape_a(1);
    E.B = examples::shape_b(1);
    QuadResult qa = integrate_regulated(E.A, 0, 1, p.quad_tol);
    QuadResult qb = integrate_regulated(E.B, 0, 1, p.quad_tol);
    E.J_A = qa.value;
    E.J_B = qb.value;
    E.err_A = qa.error;
    E.err_B = qb.error;

    IntegralTable tab;
    tab.tol = p.quad_tol;
    tab.known = {{E.A, E.J_A}, {E.B, E.J_B}, {E.G1, integrate_regulated(E.G1, 0, 1, p.quad_tol).value},
                 {E.G2, integrate_regulated(E.G2, 0, 1, p.quad_tol).value}};

    CauchySystem& S = E.S;
    S.name = "osc2";
    S.m = 2;
    S.c = {0, 0};
    S.a = 0;
    S.b = 1;
    S.ppu = p.ppu;
    S.grid = Grid::uniform(0, 1, p.ppu, {0.0});
    // The coupling follows the displayed solutions: component 1 carries
    // t(1+cos(1/t)) with an arctan coefficient driven by int (x2 - G2); the
    // factors printed in g11, g21 are the other way round.
    // H1(t) * int_0^t g is the shape itself: the shapes vanish at t = 0.
    RegulatedFn G1 = E.G1, G2 = E.G2, A = E.A, B = E.B;
    std::string n1 = "G1", n2 = "G2";
    S.phi.push_back([=](const FnVec& x) {
        long k = osc2_quantize(tab.minus(x[1], G2), 1e5);
        return iterate_fn(G1, n1, std::atan(double(k) / 1e4), A, coef_name("arctan", k) + "*" + shape_name_a());
    });
    S.phi.push_back([=](const FnVec& x) {
        long k = osc2_quantize(tab.minus(x[0], G1), 3e4);
        return iterate_fn(G2, n2, std::tanh(double(k) / 1e4), B, coef_name("tanh", k) + "*" + shape_name_b());
    });
    std::string bl = num_label(p.bound);
    E.bracket.lower = {iterate_fn(G1, n1, -p.bound, A, "-" + bl + "*" + shape_name_a()),
                       iterate_fn(G2, n2, -p.bound, B, "-" + bl + "*" + shape_name_b())};
    E.bracket.upper = {iterate_fn(G1, n1, p.bound, A, bl + "*" + shape_name_a()),
                       iterate_fn(G2, n2, p.bound, B, bl + "*" + shape_name_b())};
    return E;
}

ScalarChain osc2_scalar(double J_A, double J_B, double q1, double q2, int max_steps) {
    ScalarChain c;
    c.q.push_back({q1, q2});
    c.k.push_back({0, 0});
    for (int s = 1; s <= max_steps; ++s) {
        long k1 = osc2_quantize(q2 * J_B, 1e5);
        long k2 = osc2_quantize(q1 * J_A, 3e4);
        double n1 = std::atan(double(k1) / 1e4), n2 = std::tanh(double(k2) / 1e4);
        bool same = s > 1 && c.k.back() == std::make_pair(k1, k2);
        c.k.push_back({k1, k2});
        c.q.push_back({n1, n2});
        if (same) {
            c.stabilization_index = s;
            return c;
        }
        q1 = n1;
        q2 = n2;
    }
    return c;
}

Osc2Report run_osc2(const Osc2Params& p, const ChainOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    Osc2 E = osc2(p);
    Osc2Report r;
    r.J_A = E.J_A;
    r.J_B = E.J_B;
    r.err_A = E.err_A;
    r.err_B = E.err_B;
    r.scalar_lower = osc2_scalar(E.J_A, E.J_B, -p.bound, -p.bound);
    r.scalar_upper = osc2_scalar(E.J_A, E.J_B, p.bound, p.bound);
    Solutions sol = smallest_greatest(E.S, E.bracket, opt);
    r.up = sol.up;
    r.down = sol.down;
    r.residual_lower = sol.residual_lower;
    r.residual_upper = sol.residual_upper;
    r.kl1 = r.scalar_lower.k.back().first;
    r.kl2 = r.scalar_lower.k.back().second;
    r.ku1 = r.scalar_upper.k.back().first;
    r.ku2 = r.scalar_upper.k.back().second;
    r.lower1 = coef_name("arctan", r.kl1);
    r.lower2 = coef_name("tanh", r.kl2);
    r.upper1 = coef_name("arctan", r.ku1);
    r.upper2 = coef_name("tanh", r.ku2);
    // grid path labels carry the same names
    auto has = [](const RegulatedFn& f, const std::string& s) { return f.label().find("+ " + s + "*") != std::string::npos; };
    r.paths_agree = sol.up.converged && sol.down.converged && r.scalar_lower.stabilization_index > 0 &&
                    r.scalar_upper.stabilization_index > 0 && has(sol.lower[0], r.lower1) &&
                    has(sol.lower[1], r.lower2) && has(sol.upper[0], r.upper1) && has(sol.upper[1], r.upper2) &&
                    sol.up.stabilization_index == r.scalar_lower.stabilization_index &&
                    sol.down.stabilization_index == r.scalar_upper.stabilization_index;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---------------------------------------------------------------------------

namespace {

Rat poly_at(const Poly& p, const Rat& t) { return p(t); }

// (H(1) - H(t)) / (1 - t) by synthetic division
Poly quadstep_quotient(const Poly& H) {
    Poly num = Poly::constant(poly_at(H, Rat(1))) - H;   // vanishes at 1
    // num = (1 - t) q  <=>  -num = (t - 1) q
    std::vector<Rat> c = (Rat(-1) * num).c;
    int n = int(c.size()) - 1;
    if (n < 1) return Poly();
    std::vector<Rat> q(static_cast<size_t>(n));
    Rat carry(0);
    for (int k = n; k >= 1; --k) {
        carry = c[size_t(k)] + carry;
        q[size_t(k - 1)] = carry;
    }
    return Poly(q);
}

Rat abs_coef_sum(const Poly& p) {
    Rat s(0);
    for (const Rat& c : p.c) s += c.sign() < 0 ? -c : c;
    return s;
}

} // namespace

CauchySystem quadstep(const QuadstepParams& p) {
    if (p.T < 1) throw ConfigError("need T >= 1");
    std::vector<double> br;
    for (int i = 1; i < p.T; ++i) br.push_back(double(i));
    GridP g = Grid::uniform(0, double(p.T), p.ppu, br);
    std::vector<double> Hv(g->size(), 0.0);
    for (size_t k = 0; k < g->size() && g->t[k] <= 1; ++k) Hv[k] = p.H(g->t[k]);
    double H1 = p.H(1.0);
    std::vector<size_t> base(g->size(), 0);   // node of i for t in (i, i+1]
    std::vector<double> ival(g->size(), 0.0);
    for (size_t k = 0; k < g->size(); ++k) {
        double t = g->t[k];
        long i = t <= 1 ? 0 : long(std::ceil(t)) - 1;
        ival[k] = double(i);
        base[k] = i == 0 ? 0 : g->node_index(double(i));
    }
    CauchySystem S;
    S.name = "quadstep";
    S.m = 1;
    S.c = {0};
    S.a = 0;
    S.b = double(p.T);
    S.grid = g;
    S.breaks = br;
    S.ppu = p.ppu;
    S.phi.push_back([g, Hv, H1, base, ival](const FnVec& x) {
        RegulatedFn h = sample(x[0], g);
        const SampledFn& s = *h.as_sampled();
        size_t n = g->size();
        std::vector<double> v(n), r(n);
        for (size_t k = 0; k < n; ++k) {
            double t = g->t[k];
            if (t <= 1) v[k] = Hv[k] + t * (s.val[k] - H1);
            else {
                double i = ival[k], xi = s.val[base[k]];
                v[k] = xi + i + (t - i) * (s.val[k] - xi - i);
            }
            r[k] = v[k];
            if (g->brk[k] && k + 1 < n && t >= 1) r[k] = s.val[k] + t;   // F(x)(i+) = x(i) + i
        }
        return RegulatedFn::sampled(g, std::move(v), std::move(r));
    });
    return S;
}

RegulatedFn quadstep_closed_form(const QuadstepParams& p) {
    Poly q = quadstep_quotient(p.H);
    Poly lin({Rat(0), Rat(1)});
    Poly y0 = p.H - lin * q;           // H(t) - t (H(1) - H(t)) / (1 - t); at 1: H(1) - H'(1)
    Rat y1 = y0(Rat(1));
    std::vector<Rat> ends{Rat(1)};
    std::vector<Poly> polys{y0};
    for (int i = 1; i < p.T; ++i) {
        ends.push_back(Rat(i + 1));
        polys.push_back(Poly::constant(y1 + Rat(long(i) * (i + 1), 2)));
    }
    return RegulatedFn::poly(PiecewisePoly(Rat(0), y0(Rat(0)), ends, polys));
}

SubSuperPair quadstep_bracket(const QuadstepParams& p) {
    Rat M = Rat(1) + abs_coef_sum(quadstep_quotient(p.H)) + abs_coef_sum(Poly::constant(p.H(Rat(1))));
    // round up to an integer
    mpz_class c = M.num() / M.den() + 1;
    Rat Mi{mpq_class(c)};
    std::vector<Rat> ends, lo, hi;
    for (int i = 0; i < p.T; ++i) {
        ends.push_back(Rat(i + 1));
        lo.push_back(-Mi);
        hi.push_back(Mi + Rat(long(i) * (i + 1), 2));
    }
    SubSuperPair pr;
    pr.lower = {RegulatedFn::step(StepFn(Rat(0), -Mi, ends, lo))};
    pr.upper = {RegulatedFn::step(StepFn(Rat(0), Mi, ends, hi))};
    return pr;
}

ChainOptions quadstep_chain_options() {
    ChainOptions o;
    o.tol = 1e-13;
    o.max_steps = 64;
    o.max_omega = 8;
    return o;
}

MajorantOp quadstep_majorant(int T, double ppu, std::optional<RegulatedFn> u) {
    if (T < 1) throw ConfigError("need T >= 1");
    std::vector<double> br;
    for (int i = 1; i < T; ++i) br.push_back(double(i));
    GridP g = Grid::uniform(0, double(T), ppu, br);
    std::vector<size_t> base(g->size(), 0);
    for (size_t k = 0; k < g->size(); ++k) {
        double t = g->t[k];
        long i = t <= 1 ? 0 : long(std::ceil(t)) - 1;
        base[k] = i == 0 ? 0 : g->node_index(double(i));
    }
    MajorantOp M;
    M.name = "quadstep_majorant";
    M.grid = g;
    M.G = [g, base](const RegulatedFn& w) {
        RegulatedFn h = sample(w, g);
        const SampledFn& s = *h.as_sampled();
        size_t n = g->size();
        std::vector<double> v(n), r(n);
        for (size_t k = 0; k < n; ++k) {
            double t = g->t[k];
            if (t <= 1) v[k] = t * s.val[k];
            else {
                double i = std::ceil(t) - 1, ui = s.val[base[k]];
                v[k] = (i + 1 - t) * ui + (t - i) * s.val[k];
            }
            r[k] = v[k];
            if (g->brk[k] && k + 1 < n && t >= 1) r[k] = s.val[k];   // G(u)(i+) = u(i)
        }
        return RegulatedFn::sampled(g, std::move(v), std::move(r));
    };
    RegulatedFn uu = u ? sample(*u, g) : RegulatedFn::sampled(g, std::vector<double>(g->size(), 1.0),
                                                             std::vector<double>(g->size(), 1.0));
    // w0 = u on [0, 1], max{u(t), u(i)} on (i, i+1]
    const SampledFn& su = *uu.as_sampled();
    std::vector<double> v = su.val, r = su.right;
    for (size_t k = 0; k < g->size(); ++k) {
        if (g->t[k] <= 1) continue;
        v[k] = std::max(v[k], su.val[base[k]]);
        r[k] = std::max(r[k], su.val[base[k]]);
    }
    M.w0 = RegulatedFn::sampled(g, std::move(v), std::move(r));
    return M;
}

// ---------------------------------------------------------------------------

namespace {

// int_a^t of the grid function (linear from right[k] to val[k+1] per cell)
std::vector<double> cum_trapezoid(const GridP& g, const std::vector<double>& val, const std::vector<double>& right) {
    std::vector<double> out(g->size(), 0.0);
    for (size_t k = 0; k + 1 < g->size(); ++k)
        out[k + 1] = out[k] + 0.5 * (g->t[k + 1] - g->t[k]) * (right[k] + val[k + 1]);
    return out;
}

} // namespace

CauchySystem l1minmax(double T, double ppu) {
    GridP g = Grid::uniform(0, T, ppu);
    CauchySystem S;
    S.name = "l1minmax";
    S.m = 1;
    S.c = {0};
    S.a = 0;
    S.b = T;
    S.ppu = ppu;
    S.grid = g;
    S.phi.push_back([g](const FnVec& x) {
        RegulatedFn h = sample(x[0], g);
        const SampledFn& s = *h.as_sampled();
        size_t n = g->size();
        std::vector<double> v(n), r(n);
        for (size_t k = 0; k < n; ++k) {
            v[k] = std::tanh(s.val[k] - g->t[k]) + 1;
            r[k] = std::tanh(s.right[k] - g->t[k]) + 1;
        }
        std::vector<double> c = cum_trapezoid(g, v, r);
        return RegulatedFn::sampled(g, c, c);
    });
    return S;
}

L1Config l1minmax_config(double T) {
    L1Config c;
    // 0 <= tanh + 1 <= 2 gives ||phi(x)||_1 <= int_0^T 2t = T^2
    c.Q = [T](double) { return T * T; };
    c.scan_max = 10 * (1 + T * T);
    c.chain.tol = 1e-13;
    return c;
}

CauchySystem weighted(const Weighted& w) {
    GridP g = Grid::uniform(w.a, w.b, w.ppu);
    size_t m = w.m;
    if (w.H.size() != m || w.kappa.size() != m || w.d.size() != m || w.G.size() != m || w.c.size() != m)
        throw ConfigError("weighted system: inconsistent sizes");
    // sampled weights, forcing primitives and G
    std::vector<std::vector<std::vector<double>>> Hs(m), Dv(m), Dr(m);
    std::vector<std::vector<double>> Gv(m), Gr(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            RegulatedFn hs = sample(w.H[i][j], g);
            Hs[i].push_back(hs.as_sampled()->val);
            RegulatedFn ds = sample(w.d[i][j], g);
            Dv[i].push_back(ds.as_sampled()->val);
            Dr[i].push_back(ds.as_sampled()->right);
            for (size_t k = 0; k < g->size(); ++k)
                if (Hs[i][j][k] < 0) throw ConfigError("weights must be nonnegative");
            if (w.kappa[i][j] < 0) throw ConfigError("coupling constants must be nonnegative");
        }
        RegulatedFn gs = sample(w.G[i], g);
        Gv[i] = gs.as_sampled()->val;
        Gr[i] = gs.as_sampled()->right;
    }
    CauchySystem S;
    S.name = "weighted";
    S.m = m;
    S.c = w.c;
    S.a = w.a;
    S.b = w.b;
    S.ppu = w.ppu;
    S.grid = g;
    for (size_t i = 0; i < m; ++i) {
        auto kap = w.kappa[i];
        auto H = Hs[i], dv = Dv[i], dr = Dr[i];
        auto gv = Gv[i], gr = Gr[i];
        double g0 = gv[0];
        S.phi.push_back([=](const FnVec& x) {
            size_t n = g->size();
            std::vector<double> v(n, 0.0);
            for (size_t k = 0; k < n; ++k) v[k] = gv[k] - g0;
            std::vector<double> r = v;
            for (size_t k = 0; k < n; ++k) r[k] = gr[k] - g0;
            for (size_t j = 0; j < x.size(); ++j) {
                RegulatedFn h = sample(x[j], g);
                const SampledFn& s = *h.as_sampled();
                std::vector<double> iv(n), ir(n);
                for (size_t k = 0; k < n; ++k) {
                    iv[k] = kap[j] * std::tanh(s.val[k]) + dv[j][k];
                    ir[k] = kap[j] * std::tanh(s.right[k]) + dr[j][k];
                }
                std::vector<double> c = cum_trapezoid(g, iv, ir);
                for (size_t k = 0; k < n; ++k) {
                    v[k] += H[j][k] * c[k];
                    r[k] += H[j][k] * c[k];
                }
            }
            return RegulatedFn::sampled(g, std::move(v), std::move(r));
        });
    }
    return S;
}

SubSuperPair weighted_bracket(const Weighted& w) {
    // with |tanh| < 1 each integrand lies between d - kappa and d + kappa
    GridP g = Grid::uniform(w.a, w.b, w.ppu);
    SubSuperPair pr;
    for (size_t i = 0; i < w.m; ++i) {
        RegulatedFn G = sample(w.G[i], g);
        const SampledFn& gs = *G.as_sampled();
        size_t n = g->size();
        std::vector<double> lo(n), hi(n), lor(n), hir(n);
        double g0 = gs.val[0];
        for (size_t k = 0; k < n; ++k) {
            lo[k] = hi[k] = w.c[i] + gs.val[k] - g0;
            lor[k] = hir[k] = w.c[i] + gs.right[k] - g0;
        }
        for (size_t j = 0; j < w.m; ++j) {
            RegulatedFn Hs = sample(w.H[i][j], g), ds = sample(w.d[i][j], g);
            const SampledFn &h = *Hs.as_sampled(), &d = *ds.as_sampled();
            std::vector<double> dl(n), dh(n), dlr(n), dhr(n);
            for (size_t k = 0; k < n; ++k) {
                dl[k] = d.val[k] - w.kappa[i][j];
                dh[k] = d.val[k] + w.kappa[i][j];
                dlr[k] = d.right[k] - w.kappa[i][j];
                dhr[k] = d.right[k] + w.kappa[i][j];
            }
            std::vector<double> cl = cum_trapezoid(g, dl, dlr), ch = cum_trapezoid(g, dh, dhr);
            for (size_t k = 0; k < n; ++k) {
                lo[k] += h.val[k] * cl[k];
                hi[k] += h.val[k] * ch[k];
                lor[k] += h.val[k] * cl[k];
                hir[k] += h.val[k] * ch[k];
            }
        }
        pr.lower.push_back(RegulatedFn::sampled(g, lo, lor));
        pr.upper.push_back(RegulatedFn::sampled(g, hi, hir));
    }
    return pr;
}

namespace {

// random step function on [a, b] with k cells and values in [lo, hi]
RegulatedFn random_step(std::mt19937& rng, double a, double b, int k, double lo, double hi,
                        bool nondecreasing = false) {
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<Rat> ends, vals;
    Rat ra = Rat::from_double(a), rb = Rat::from_double(b);
    for (int i = 1; i <= k; ++i) {
        ends.push_back(ra + (rb - ra) * Rat(i, k));
        vals.push_back(Rat(long(std::lround(U(rng) * 64)), 64));
    }
    if (nondecreasing) std::sort(vals.begin(), vals.end());
    return RegulatedFn::step(StepFn(ra, vals[0], ends, vals));
}

} // namespace

Weighted random_weighted(unsigned seed, size_t m, double ppu) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    Weighted w;
    w.m = m;
    w.ppu = ppu;
    w.H.assign(m, {});
    w.kappa.assign(m, {});
    w.d.assign(m, {});
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            w.H[i].push_back(random_step(rng, w.a, w.b, 3, 0, 1.5));
            w.kappa[i].push_back(std::round(U(rng) * 64) / 64);
            w.d[i].push_back(random_step(rng, w.a, w.b, 4, -1, 1));
        }
        w.G.push_back(random_step(rng, w.a, w.b, 5, -1, 1));
        w.c.push_back(std::round((U(rng) * 2 - 1) * 64) / 64);
    }
    return w;
}

Weighted dominate(const Weighted& w, unsigned seed) {
    std::mt19937 rng(seed ^ 0x9e3779b9u);
    std::uniform_real_distribution<double> U(0, 1);
    Weighted v = w;
    for (size_t i = 0; i < w.m; ++i) {
        // G' = G + nondecreasing step (so G' - G'(a) >= G - G(a)); d' >= d; c' >= c
        v.G[i] = w.G[i] + random_step(rng, w.a, w.b, 3, 0, 0.5, true);
        for (size_t j = 0; j < w.m; ++j) v.d[i][j] = w.d[i][j] + random_step(rng, w.a, w.b, 2, 0, 0.5);
        v.c[i] = w.c[i] + std::round(U(rng) * 32) / 64;
    }
    return v;
}

CauchySystem constant_system(std::vector<RegulatedFn> P, std::vector<double> c, double a, double b, double ppu) {
    CauchySystem S;
    S.name = "constant";
    S.m = P.size();
    S.c = std::move(c);
    S.a = a;
    S.b = b;
    S.ppu = ppu;
    for (RegulatedFn& p : P) {
        double p0 = p.value(a);
        RegulatedFn q = p0 == 0 ? p : RegulatedFn::lincomb({{1.0, p}, {-p0, RegulatedFn::constant(1, p.domain())}});
        S.phi.push_back([q](const FnVec&) { return q; });
    }
    return S;
}

std::vector<std::string> example_names() {
    std::vector<std::string> n = examples::function_names();
    for (const char* s : {"osc2", "quadstep", "quadstep_closed_form", "quadstep_majorant", "l1minmax", "weighted_sample"}) n.push_back(s);
    return n;
}

Example build_example(const std::string& name, const examples::Params& p) {
    if (name == "osc2") return osc2().S;
    if (name == "quadstep" || name == "quadstep_closed_form") {
        QuadstepParams q;
        q.T = int(std::lround(p.T));
        if (q.T < 1) q.T = 5;
        if (name == "quadstep") return quadstep(q);
        return quadstep_closed_form(q);
    }
    if (name == "quadstep_majorant") return quadstep_majorant(std::max(1, int(std::lround(p.T))));
    if (name == "l1minmax") return l1minmax(p.T);
    if (name == "weighted_sample") return weighted(random_weighted(1));
    for (const std::string& f : examples::function_names())
        if (f == name) return examples::build_function(name, p);
    throw ConfigError("unknown example '" + name + "'");
}

} // namespace lrp::systems
