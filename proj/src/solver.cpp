#include "lrp/solver.hpp"

#include "lrp/funcspace.hpp"
#include "lrp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace lrp {

std::string to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

GridP CauchySystem::verification_grid() const {
    if (grid) return grid;
    return Grid::uniform(a, b, ppu, breaks);
}

void CauchySystem::check() const {
    if (m == 0 || phi.size() != m || c.size() != m)
        throw ConfigError("system '" + name + "': need m component maps and m initial values");
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("system '" + name + "': need a finite a < b");
}

namespace {

struct Samples {
    std::vector<std::vector<double>> val, right;
};

const SampledFn& sampled_on(const RegulatedFn& f, const GridP& g, RegulatedFn& hold) {
    hold = sample(f, g);
    return *hold.as_sampled();
}

Samples sample_all(const FnVec& x, const GridP& g) {
    Samples s;
    for (const RegulatedFn& f : x) {
        RegulatedFn h;
        const SampledFn& sf = sampled_on(f, g, h);
        s.val.push_back(sf.val);
        s.right.push_back(sf.right);
    }
    return s;
}

double sup_diff(const Samples& p, const Samples& q) {
    double d = 0;
    for (size_t i = 0; i < p.val.size(); ++i) {
        size_t n = p.val[i].size();
        d = std::max(d, simd::max_abs_diff(p.val[i].data(), q.val[i].data(), n));
        d = std::max(d, simd::max_abs_diff(p.right[i].data(), q.right[i].data(), n));
    }
    return d;
}

double sup_abs(const Samples& p) {
    double d = 0;
    for (size_t i = 0; i < p.val.size(); ++i) {
        d = std::max(d, simd::max_abs(p.val[i].data(), p.val[i].size()));
        d = std::max(d, simd::max_abs(p.right[i].data(), p.right[i].size()));
    }
    return d;
}

// largest amount by which lo exceeds hi
double violation(const Samples& lo, const Samples& hi) {
    double v = -INFINITY;
    for (size_t i = 0; i < lo.val.size(); ++i) {
        size_t n = lo.val[i].size();
        v = std::max(v, simd::max_violation(lo.val[i].data(), hi.val[i].data(), n));
        v = std::max(v, simd::max_violation(lo.right[i].data(), hi.right[i].data(), n));
    }
    return v;
}

// first node where lo > hi + slack, for error messages
std::string where(const Samples& lo, const Samples& hi, const GridP& g, double slack) {
    for (size_t i = 0; i < lo.val.size(); ++i)
        for (size_t k = 0; k < g->size(); ++k)
            if (lo.val[i][k] > hi.val[i][k] + slack || lo.right[i][k] > hi.right[i][k] + slack) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "component %zu at t=%.17g (%.17g vs %.17g)", i + 1, g->t[k],
                              lo.val[i][k], hi.val[i][k]);
                return buf;
            }
    return "?";
}

bool labels_equal(const FnVec& x, const FnVec& y) {
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i].label().empty() || x[i].label() != y[i].label()) return false;
    return true;
}

bool exact_equal(const FnVec& x, const FnVec& y) {
    for (size_t i = 0; i < x.size(); ++i) {
        if (!x[i].exact() || !y[i].exact()) return false;
        if (!(*x[i].to_poly() == *y[i].to_poly())) return false;
    }
    return true;
}

Stage make_stage(const std::string& label, const FnVec& x, const Samples& s) {
    Stage st;
    st.label = label;
    st.val = s.val;
    st.right = s.right;
    for (const RegulatedFn& f : x) st.exact.push_back(f.label());
    return st;
}

FnVec to_fns(const Samples& s, const GridP& g) {
    FnVec x;
    for (size_t i = 0; i < s.val.size(); ++i) x.push_back(RegulatedFn::sampled(g, s.val[i], s.right[i]));
    return x;
}

// Secant estimate of the limit of a stage, then
// the left-continuous repair: a node whose value never moved during the stage
// while its left neighbour did is replaced by the linear extrapolation from
// the left (max for up chains, min for down chains), i.e. the limit is
// redefined to be left-continuous there.
// hist holds every iterate of the stage (hist[0] its start). With L = n/2 the
// ratio B = (x_n - x_{n-L}) / (x_{n-L} - x_{n-2L}) is the L-step contraction of a
// linear recurrence and (x_n - B x_{n-L}) / (1 - B) its limit; the long
// baseline keeps the estimate well conditioned when the rate is close to 1.
Samples omega_stage(const std::vector<Samples>& hist, const GridP& g, int dir, double floor, double tol,
                    bool regularize) {
    size_t nst = hist.size() - 1, L = nst / 2;
    const Samples &x0 = hist[nst - 2 * L], &x1 = hist[nst - L], &x2 = hist[nst], &start = hist[0];
    Samples out = x2;
    double scale = sup_abs(x2);
    simd::Omega o;
    o.min_sep = 1e-11 * (1 + scale);
    o.dir = dir;
    o.floor = floor;
    size_t n = g->size();
    for (size_t i = 0; i < x2.val.size(); ++i) {
        simd::omega_extrapolate(x0.val[i].data(), x1.val[i].data(), x1.val[i].data(), x2.val[i].data(),
                                out.val[i].data(), n, o);
        simd::omega_extrapolate(x0.right[i].data(), x1.right[i].data(), x1.right[i].data(), x2.right[i].data(),
                                out.right[i].data(), n, o);
        if (regularize) {
            std::vector<double>& v = out.val[i];
            for (size_t k = 2; k < n; ++k) {
                bool frozen = std::fabs(x2.val[i][k] - start.val[i][k]) <= tol;
                bool moved = std::fabs(x2.val[i][k - 1] - start.val[i][k - 1]) > tol;
                if (!frozen || !moved) continue;
                double e = 2 * v[k - 1] - v[k - 2];
                v[k] = dir > 0 ? std::max(v[k], e) : std::min(v[k], e);
                v[k] = std::max(v[k], floor);
            }
        }
        for (size_t k = 0; k < n; ++k)
            if (!g->brk[k]) out.right[i][k] = out.val[i][k];
    }
    return out;
}

// keeps traces of long chains bounded: beyond this many stored doubles only
// stage 0, omega-stages and the newest stages keep their samples
constexpr size_t kTraceBudget = 8'000'000;

void push_stage(IterationTrace& tr, Stage st, size_t& stored) {
    size_t sz = 0;
    for (auto& v : st.val) sz += 2 * v.size();
    stored += sz;
    tr.stages.push_back(std::move(st));
    if (stored > kTraceBudget && tr.stages.size() > 4) {
        Stage& old = tr.stages[tr.stages.size() - 4];
        if (old.label != "0" && old.label.rfind("omega", 0) != 0 && !old.val.empty() && !old.val[0].empty()) {
            for (auto& v : old.val) { stored -= 2 * v.size(); v.clear(); v.shrink_to_fit(); }
            for (auto& v : old.right) { v.clear(); v.shrink_to_fit(); }
        }
    }
}

RegulatedFn add_constant(const RegulatedFn& f, double c) {
    if (c == 0) return f;
    if (const SampledFn* s = f.as_sampled()) {
        std::vector<double> v = s->val, r = s->right;
        for (double& x : v) x += c;
        for (double& x : r) x += c;
        return RegulatedFn::sampled(s->grid, std::move(v), std::move(r));
    }
    const Interval& d = f.domain();
    if (f.exact()) {
        PiecewisePoly p = *f.to_poly();
        PiecewisePoly k(p.lo(), p.hi(), Poly::constant(Rat::from_double(c)));
        RegulatedFn r = RegulatedFn::poly(p + k);
        return f.label().empty() ? r : r.with_label(f.label());
    }
    RegulatedFn r = RegulatedFn::lincomb({{1.0, f}, {c, RegulatedFn::constant(1, d)}});
    if (f.label().empty()) return r;
    char buf[64];
    std::snprintf(buf, sizeof buf, " + %.17g", c);
    return r.with_label(f.label() + buf);
}

} // namespace

FnVec apply_operator(const CauchySystem& S, const FnVec& x) {
    S.check();
    if (x.size() != S.m) throw DomainError("operator input has the wrong dimension");
    FnVec out(S.m);
    for (size_t i = 0; i < S.m; ++i) out[i] = add_constant(S.phi[i](x), S.c[i]);
    return out;
}

double fixed_point_residual(const CauchySystem& S, const FnVec& y) {
    GridP g = S.verification_grid();
    return sup_diff(sample_all(apply_operator(S, y), g), sample_all(y, g));
}

IterationTrace iterate_chain(const CauchySystem& S, const FnVec& start, Direction dir, const ChainOptions& opt) {
    S.check();
    if (start.size() != S.m) throw DomainError("chain start has the wrong dimension");
    GridP g = S.verification_grid();
    IterationTrace tr;
    tr.dir = dir;
    tr.grid = g;
    int sgn = dir == Direction::Up ? 1 : -1;
    size_t stored = 0;

    FnVec x = start;
    Samples sx = sample_all(x, g);
    push_stage(tr, make_stage("0", x, sx), stored);
    std::vector<Samples> hist{sx};   // iterates of the current stage
    int step = 0, in_stage = 0;
    const int total = opt.max_steps * (opt.max_omega + 1) + 1;
    while (step < total) {
        FnVec y = apply_operator(S, x);
        Samples sy = sample_all(y, g);
        ++step;
        ++in_stage;
        double scale = std::max(sup_abs(sx), sup_abs(sy));
        double slack = opt.mono_tol * (1 + scale);
        double v = dir == Direction::Up ? violation(sx, sy) : violation(sy, sx);
        if (v > slack) {
            throw MonotonicityError(std::string(dir == Direction::Up ? "up" : "down") + " chain of '" + S.name +
                                    "' not monotone at stage " + std::to_string(tr.stages.size()) + ": " +
                                    (dir == Direction::Up ? where(sx, sy, g, slack) : where(sy, sx, g, slack)));
        }
        bool eq = labels_equal(x, y) || exact_equal(x, y);
        double d = sup_diff(sx, sy);
        tr.last_diff = d;
        push_stage(tr, make_stage(std::to_string(tr.stages.size()), y, sy), stored);
        if (eq || d <= opt.tol) {
            tr.converged = true;
            tr.stabilization_index = int(tr.stages.size()) - 1;
            tr.result = y;
            return tr;
        }
        x = std::move(y);
        sx = std::move(sy);
        hist.push_back(sx);
        if (in_stage >= opt.max_steps) {
            if (tr.omega_stages >= opt.max_omega || hist.size() < 3) break;
            ++tr.omega_stages;
            Samples e = omega_stage(hist, g, sgn, -1e308, opt.tol, opt.regularize);
            x = to_fns(e, g);
            sx = e;
            push_stage(tr, make_stage("omega" + std::to_string(tr.omega_stages), x, sx), stored);
            hist.assign(1, sx);
            in_stage = 0;
        }
    }
    tr.converged = false;
    tr.result = x;
    return tr;
}

std::string IterationTrace::csv() const {
    std::ostringstream os;
    size_t m = 0;
    for (const Stage& s : stages) m = std::max(m, s.val.size());
    os << "stage,t";
    for (size_t i = 0; i < m; ++i) os << ",x" << i + 1;
    os << "\n";
    char buf[64];
    for (const Stage& s : stages) {
        if (s.val.empty() || s.val[0].empty()) continue;
        for (size_t k = 0; k < grid->size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", grid->t[k]);
            std::string t = buf;
            os << s.label << "," << t;
            bool jump = false;
            for (size_t i = 0; i < s.val.size(); ++i) {
                std::snprintf(buf, sizeof buf, ",%.17g", s.val[i][k]);
                os << buf;
                if (s.right[i][k] != s.val[i][k]) jump = true;
            }
            os << "\n";
            if (jump && k + 1 < grid->size()) {
                os << s.label << "," << t << "+";
                for (size_t i = 0; i < s.val.size(); ++i) {
                    std::snprintf(buf, sizeof buf, ",%.17g", s.right[i][k]);
                    os << buf;
                }
                os << "\n";
            }
        }
    }
    return os.str();
}

Solutions smallest_greatest(const CauchySystem& S, const SubSuperPair& pair, const ChainOptions& opt) {
    GridP g = S.verification_grid();
    Samples lo = sample_all(pair.lower, g), hi = sample_all(pair.upper, g);
    double slack = opt.mono_tol * (1 + std::max(sup_abs(lo), sup_abs(hi)));
    if (violation(lo, hi) > slack) throw OrderBoundError("subsolution above supersolution: " + where(lo, hi, g, slack));
    Solutions r;
    r.up = iterate_chain(S, pair.lower, Direction::Up, opt);
    r.down = iterate_chain(S, pair.upper, Direction::Down, opt);
    r.lower = r.up.result;
    r.upper = r.down.result;
    r.residual_lower = fixed_point_residual(S, r.lower);
    r.residual_upper = fixed_point_residual(S, r.upper);
    Samples yl = sample_all(r.lower, g), yu = sample_all(r.upper, g);
    r.bracket_gap = std::max(violation(lo, yl), violation(yu, hi));
    r.order_gap = violation(yl, yu);
    if (r.bracket_gap > opt.verify_tol) throw OrderBoundError("solutions of '" + S.name + "' left the bracket");
    if (r.order_gap > opt.verify_tol)
        throw OrderBoundError("smallest solution above greatest: " + where(yl, yu, g, opt.verify_tol));
    return r;
}

namespace {

RegulatedFn normalized_primitive(const Distribution& h, double a) {
    const RegulatedFn& P = h.primitive;
    double pa = P.value(a);
    if (pa == 0) return P;
    if (P.exact()) {
        PiecewisePoly p = *P.to_poly();
        return RegulatedFn::poly(p - PiecewisePoly(p.lo(), p.hi(), Poly::constant(Rat::from_double(pa))));
    }
    return RegulatedFn::lincomb({{1.0, P}, {-pa, RegulatedFn::constant(1, P.domain())}});
}

} // namespace

SubSuperPair bounds_to_subsuper(const CauchySystem& S, const std::vector<Distribution>& h_lo,
                                const std::vector<Distribution>& h_hi, int spot_checks) {
    S.check();
    if (h_lo.size() != S.m || h_hi.size() != S.m) throw ConfigError("need one lower and one upper bound per component");
    GridP g = S.verification_grid();
    std::vector<RegulatedFn> Plo, Phi;
    SubSuperPair pr;
    for (size_t i = 0; i < S.m; ++i) {
        Plo.push_back(normalized_primitive(h_lo[i], S.a));
        Phi.push_back(normalized_primitive(h_hi[i], S.a));
        pr.lower.push_back(add_constant(Plo[i], S.c[i]));
        pr.upper.push_back(add_constant(Phi[i], S.c[i]));
    }
    Samples blo = sample_all(Plo, g), bhi = sample_all(Phi, g);
    // spot checks: (1 - s) y_lo + s y_hi for s evenly spread in [0, 1]
    for (int k = 0; k < spot_checks; ++k) {
        double s = spot_checks == 1 ? 0.5 : double(k) / double(spot_checks - 1);
        FnVec x;
        for (size_t i = 0; i < S.m; ++i) {
            if (s == 0) x.push_back(pr.lower[i]);
            else if (s == 1) x.push_back(pr.upper[i]);
            else x.push_back(RegulatedFn::lincomb({{1 - s, pr.lower[i]}, {s, pr.upper[i]}}));
        }
        FnVec ph;
        for (size_t i = 0; i < S.m; ++i) ph.push_back(S.phi[i](x));
        Samples sp = sample_all(ph, g);
        double slack = 1e-12 * (1 + std::max(sup_abs(sp), sup_abs(bhi)));
        if (violation(blo, sp) > slack)
            throw OrderBoundError("lower bound exceeds the primitive of f(x): " + where(blo, sp, g, slack));
        if (violation(sp, bhi) > slack)
            throw OrderBoundError("primitive of f(x) exceeds the upper bound: " + where(sp, bhi, g, slack));
    }
    return pr;
}

double l1_norm_grid(const RegulatedFn& f, const GridP& g) {
    RegulatedFn h;
    const SampledFn& s = sampled_on(f, g, h);
    double acc = 0;
    for (size_t k = 0; k + 1 < g->size(); ++k) {
        double a = s.right[k], b = s.val[k + 1], w = g->t[k + 1] - g->t[k];
        // exact integral of |linear| on the cell
        if ((a >= 0) == (b >= 0)) acc += 0.5 * w * std::fabs(a + b);
        else acc += 0.5 * w * (a * a + b * b) / (std::fabs(a) + std::fabs(b));
    }
    return acc;
}

double find_radius(const L1Config& cfg) {
    if (!cfg.Q) throw ConfigError("growth function Q missing");
    int n = std::max(cfg.scan_points, 2);
    double R = -1;
    size_t last = 0;
    for (int k = 0; k < n; ++k) {
        double r = cfg.scan_max * double(k) / double(n - 1);
        double q = cfg.Q(r);
        if (!std::isfinite(q) || q < 0) throw ConfigError("growth function must be finite and nonnegative");
        if (r <= q) { R = r; last = size_t(k); }
    }
    if (R < 0 || last == size_t(n - 1))
        throw ConfigError("no radius R = Q(R) found up to " + std::to_string(cfg.scan_max));
    double lo = R, hi = cfg.scan_max * double(last + 1) / double(n - 1);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= cfg.Q(mid)) lo = mid; else hi = mid;
    }
    R = lo;
    if (std::fabs(R - cfg.Q(R)) > cfg.tol * (1 + R))
        throw ConfigError("scan ended at R=" + std::to_string(R) + " with Q(R)=" + std::to_string(cfg.Q(R)) +
                          "; Q has no fixed point there");
    return R;
}

namespace {

CauchySystem clipped(const CauchySystem& S, bool upper) {
    // y -> max{0, F0(y)} (upper) or min{0, F0(y)}
    CauchySystem T = S;
    GridP g = S.verification_grid();
    T.grid = g;
    for (size_t i = 0; i < S.m; ++i) {
        auto f = S.phi[i];
        T.c[i] = 0;
        T.phi[i] = [f, g, upper](const FnVec& x) {
            RegulatedFn h;
            const SampledFn& s = sampled_on(f(x), g, h);
            std::vector<double> v = s.val, r = s.right, z(v.size(), 0.0);
            if (upper) {
                simd::vmax(v.data(), z.data(), v.data(), v.size());
                simd::vmax(r.data(), z.data(), r.data(), r.size());
            } else {
                simd::vmin(v.data(), z.data(), v.data(), v.size());
                simd::vmin(r.data(), z.data(), r.data(), r.size());
            }
            return RegulatedFn::sampled(g, std::move(v), std::move(r));
        };
    }
    return T;
}

} // namespace

L1Result minmax_l1(const CauchySystem& S, const L1Config& cfg) {
    S.check();
    for (double c : S.c)
        if (c != 0) throw ConfigError("minimal/maximal L1 solutions are for zero initial values");
    L1Result res;
    res.R = find_radius(cfg);
    GridP g = S.verification_grid();
    // (f1) on a sampled ball: constants and ramps of L1 norm <= R
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> U(-1, 1);
    double L = S.b - S.a;
    for (int k = 0; k < cfg.ball_samples; ++k) {
        FnVec x;
        double nx = 0;
        for (size_t i = 0; i < S.m; ++i) {
            double u = U(rng), w = U(rng);
            // u + w (t - a) / L scaled into the ball
            PiecewisePoly p(Rat::from_double(S.a), Rat::from_double(S.b),
                            Poly({Rat::from_double(u - w * S.a / L), Rat::from_double(w / L)}));
            RegulatedFn f = RegulatedFn::poly(p);
            double n1 = l1_norm_grid(f, g);
            double s = n1 > 0 ? res.R * std::fabs(U(rng)) / n1 : 0;
            x.push_back(s * f);
            nx = std::max(nx, n1 * s);
        }
        for (size_t i = 0; i < S.m; ++i) {
            double n = l1_norm_grid(S.phi[i](x), g);
            if (n > cfg.Q(nx) * (1 + 1e-12) + 1e-15)
                throw ConfigError("growth bound violated on the ball: ||phi_" + std::to_string(i + 1) + "(x)||_1 = " +
                                  std::to_string(n) + " > Q(" + std::to_string(nx) + ")");
        }
    }
    FnVec zero;
    for (size_t i = 0; i < S.m; ++i) zero.push_back(RegulatedFn::sampled(g, std::vector<double>(g->size(), 0.0),
                                                                         std::vector<double>(g->size(), 0.0)));
    IterationTrace lo = iterate_chain(clipped(S, false), zero, Direction::Down, cfg.chain);
    IterationTrace hi = iterate_chain(clipped(S, true), zero, Direction::Up, cfg.chain);
    if (!lo.converged || !hi.converged) throw ConfigError("bracket iterations did not settle within the budget");
    res.bracket.lower = lo.result;
    res.bracket.upper = hi.result;
    res.sol = smallest_greatest(S, res.bracket, cfg.chain);
    return res;
}

RegulatedFn ceil_norm(const FnVec& x) {
    if (x.empty()) throw DomainError("ceil norm of an empty vector");
    RegulatedFn acc = abs(x[0]);
    for (size_t i = 1; i < x.size(); ++i) {
        if (!(x[i].domain().lo == acc.domain().lo && x[i].domain().hi == acc.domain().hi))
            throw DomainError("ceil norm needs a common interval");
        acc = join(acc, abs(x[i]));
    }
    return acc;
}

UniqResult uniqueness_chain(const MajorantOp& M, const UniqOptions& opt) {
    if (!M.G || !M.grid) throw ConfigError("majorant operator needs G and a grid");
    GridP g = M.grid;
    UniqResult res;
    IterationTrace& tr = res.trace;
    tr.dir = Direction::Down;
    tr.grid = g;
    size_t stored = 0;
    RegulatedFn w = sample(M.w0, g);
    Samples sw = sample_all({w}, g);
    if (violation(Samples{{std::vector<double>(g->size(), 0.0)}, {std::vector<double>(g->size(), 0.0)}}, sw) > 0)
        throw ConfigError("starting envelope must be nonnegative");
    push_stage(tr, make_stage("0", {w}, sw), stored);
    std::vector<Samples> hist{sw};
    double prev_sup = sup_abs(sw);
    res.stage_sup.push_back(prev_sup);
    int in_stage = 0, stagnant = 0;
    const int total = opt.max_steps * (opt.max_omega + 1);
    for (int step = 0; step < total; ++step) {
        RegulatedFn nw = sample(M.G(w), g);
        Samples sn = sample_all({nw}, g);
        ++in_stage;
        double slack = 1e-12 * (1 + prev_sup);
        if (violation(sn, sw) > slack)
            throw MonotonicityError("majorant chain increased: " + where(sn, sw, g, slack));
        Samples zero{{std::vector<double>(g->size(), 0.0)}, {std::vector<double>(g->size(), 0.0)}};
        if (violation(zero, sn) > slack) throw MonotonicityError("majorant produced a negative envelope");
        double s = sup_abs(sn);
        tr.last_diff = sup_diff(sw, sn);
        push_stage(tr, make_stage(std::to_string(tr.stages.size()), {nw}, sn), stored);
        res.stage_sup.push_back(s);
        w = nw;
        sw = sn;
        hist.push_back(sn);
        if (s < opt.tol) {
            res.certified = true;
            res.final_sup = s;
            tr.converged = true;
            tr.stabilization_index = int(tr.stages.size()) - 1;
            tr.result = {w};
            return res;
        }
        stagnant = s > opt.stagnation_ratio * prev_sup ? stagnant + 1 : 0;
        prev_sup = s;
        if ((stagnant >= opt.stagnation_steps || in_stage >= opt.max_steps) && hist.size() >= 3) {
            if (tr.omega_stages >= opt.max_omega) break;
            ++tr.omega_stages;
            Samples e = omega_stage(hist, g, -1, 0.0, opt.tol, true);
            w = RegulatedFn::sampled(g, e.val[0], e.right[0]);
            sw = e;
            push_stage(tr, make_stage("omega" + std::to_string(tr.omega_stages), {w}, sw), stored);
            prev_sup = sup_abs(sw);
            res.stage_sup.push_back(prev_sup);
            hist.assign(1, sw);
            in_stage = 0;
            stagnant = 0;
            if (prev_sup < opt.tol) {
                res.certified = true;
                res.final_sup = prev_sup;
                tr.converged = true;
                tr.stabilization_index = int(tr.stages.size()) - 1;
                tr.result = {w};
                return res;
            }
        }
    }
    res.final_sup = prev_sup;
    tr.result = {w};
    return res;
}

RegulatedFn primitive_on(const RegulatedFn& f, double a, const GridP& grid) {
    if (f.exact()) {
        PiecewisePoly p = *f.to_poly();
        if (p.lo().to_double() != a) p = p.restrict(Rat::from_double(a), p.hi());
        return RegulatedFn::poly(p.cumulative());
    }
    RegulatedFn h;
    const SampledFn& s = sampled_on(f, grid, h);
    std::vector<double> v(grid->size(), 0.0);
    // exact integral of the grid function (linear from right[k] to val[k+1])
    for (size_t k = 0; k + 1 < grid->size(); ++k)
        v[k + 1] = v[k] + 0.5 * (grid->t[k + 1] - grid->t[k]) * (s.right[k] + s.val[k + 1]);
    std::vector<double> r = v;
    return RegulatedFn::sampled(grid, std::move(v), std::move(r));
}

CauchySystem reduce_higher_order(int m, std::function<RegulatedFn(const FnVec&)> g, std::vector<double> c, double a,
                                 double b, double ppu) {
    if (m < 1) throw ConfigError("order must be at least 1");
    if (c.size() != size_t(m)) throw ConfigError("need m initial values");
    if (!g) throw ConfigError("missing right-hand side");
    CauchySystem S;
    S.m = size_t(m);
    S.c = std::move(c);
    S.a = a;
    S.b = b;
    S.ppu = ppu;
    S.grid = Grid::uniform(a, b, ppu);
    S.name = "order" + std::to_string(m);
    GridP grid = S.grid;
    for (int i = 0; i + 1 < m; ++i)
        S.phi.push_back([i, a, grid](const FnVec& x) { return primitive_on(x[size_t(i) + 1], a, grid); });
    S.phi.push_back(std::move(g));
    return S;
}

namespace {

// (t - a)^n / n! expanded in t
Poly shifted_power(const Rat& a, int n) {
    Poly p = Poly::constant(Rat(1));
    Poly lin({-a, Rat(1)});
    Rat fact(1);
    for (int k = 1; k <= n; ++k) {
        p = p * lin;
        fact *= Rat(k);
    }
    return (Rat(1) / fact) * p;
}

} // namespace

SubSuperPair higher_order_bounds(int m, const std::vector<double>& c, double lo, double hi, double a, double b) {
    if (m < 1 || c.size() != size_t(m)) throw ConfigError("need m >= 1 and m initial values");
    if (lo > hi) throw OrderBoundError("lower bound above upper bound");
    Rat ra = Rat::from_double(a), rb = Rat::from_double(b);
    SubSuperPair pr;
    for (int i = 0; i < m; ++i) {
        Poly base;
        for (int j = i; j < m; ++j) base = base + Rat::from_double(c[size_t(j)]) * shifted_power(ra, j - i);
        Poly top = shifted_power(ra, m - i);
        pr.lower.push_back(RegulatedFn::poly(PiecewisePoly(ra, rb, base + Rat::from_double(lo) * top)));
        pr.upper.push_back(RegulatedFn::poly(PiecewisePoly(ra, rb, base + Rat::from_double(hi) * top)));
    }
    return pr;
}

} // namespace lrp
