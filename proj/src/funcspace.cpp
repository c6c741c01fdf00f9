#include "lrp/funcspace.hpp"
#include "lrp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lrp {

Limits limits(const RegulatedFn& f, double t) { return f.limits(t); }

// ---------------------------------------------------------------- NumStep

size_t NumStep::cell_of(double t) const {
    auto it = std::lower_bound(ends.begin(), ends.end(), t);
    if (it == ends.end()) throw DomainError("point beyond step data");
    return size_t(it - ends.begin());
}

double NumStep::operator()(double t) const {
    if (t == a) return base;
    if (t < a || t > hi()) throw DomainError("point outside step data");
    return vals[cell_of(t)];
}

NumStep NumStep::from_exact(const StepFn& s) {
    NumStep r;
    r.a = s.lo().to_double();
    r.base = s.base_value().to_double();
    for (size_t i = 0; i < s.size(); ++i) {
        r.ends.push_back(s.end(i).to_double());
        r.vals.push_back(s.val(i).to_double());
        r.residual.push_back(0);
    }
    return r;
}

// ------------------------------------------------------ step approximation

namespace {

struct FineCell {
    double y, v, lo, hi;
    bool residual;
};

struct FineBuild {
    double a = 0, base = 0;
    std::vector<FineCell> cells;
};

FineBuild build_fine(const RegulatedFn& f, int n, double a, double b, const StepApproxOptions& opt) {
    FineBuild fb;
    fb.a = a;
    fb.base = f.value(a);
    double tol = 1.0 / n;
    double res_w = opt.residual_width > 0 ? opt.residual_width : (b - a) * std::ldexp(1.0, -15);
    double min_w = (b - a) * 1e-14;
    std::vector<double> seeds{a};
    for (double x : f.break_points(a, b))
        if (x > a && x < b) seeds.push_back(x);
    seeds.push_back(b);
    std::vector<std::pair<double, double>> stack;
    for (size_t s = 0; s + 1 < seeds.size(); ++s) {
        double s0 = seeds[s], s1 = seeds[s + 1];
        stack.emplace_back(s0, s1);
        while (!stack.empty()) {
            auto [x, y] = stack.back();
            stack.pop_back();
            Iv h = f.enclose(x, y);
            double v = NAN;
            if (h.bounded() && !h.is_nan() && h.hi - h.lo <= tol) {
                v = f.value(y);
                h = hull(h, Iv(v));
                if (h.hi - h.lo <= tol) {
                    fb.cells.push_back({y, v, h.lo, h.hi, false});
                    continue;
                }
            }
            double m = 0.5 * (x + y);
            bool over = fb.cells.size() + stack.size() >= opt.max_cells;
            bool touches = x == s0 || y == s1;
            if ((touches && y - x <= res_w) || y - x <= min_w || over || !(m > x && m < y)) {
                if (std::isnan(v)) v = f.value(y);
                fb.cells.push_back({y, v, -INFINITY, INFINITY, true});
                continue;
            }
            stack.emplace_back(m, y);
            stack.emplace_back(x, m);
        }
    }
    return fb;
}

StepApprox coarsen(const FineBuild& fb, int n) {
    StepApprox r;
    r.n = n;
    r.step.a = fb.a;
    r.step.base = fb.base;
    double tol = 1.0 / n;
    double glo = 0, ghi = 0, gy = 0, gv = 0;
    bool open = false;
    auto flush = [&] {
        if (!open) return;
        r.step.ends.push_back(gy);
        r.step.vals.push_back(gv);
        r.step.residual.push_back(0);
        open = false;
    };
    double prev_end = fb.a;
    for (const FineCell& c : fb.cells) {
        if (c.residual) {
            flush();
            r.step.ends.push_back(c.y);
            r.step.vals.push_back(c.v);
            r.step.residual.push_back(1);
            ++r.residual_cells;
            r.residual_length += c.y - prev_end;
            prev_end = c.y;
            continue;
        }
        if (open && std::max(ghi, c.hi) - std::min(glo, c.lo) <= tol) {
            glo = std::min(glo, c.lo);
            ghi = std::max(ghi, c.hi);
        } else {
            flush();
            glo = c.lo;
            ghi = c.hi;
            open = true;
        }
        gy = c.y;
        gv = c.v;
        prev_end = c.y;
    }
    flush();
    r.certified = r.residual_cells == 0;
    return r;
}

void compact_interval(const RegulatedFn& f, const Interval& J) {
    if (!J.bounded()) throw UnsupportedError("step approximation needs a compact interval; got " + J.str());
    const Interval& d = f.domain();
    if (!d.contains(J.lo) || !d.contains(J.hi)) throw DomainError("interval " + J.str() + " outside domain " + d.str());
}

StepApprox exact_step(const StepFn& s, const Interval& J, int n) {
    StepFn r = s.restrict(Rat::from_double(J.lo), Rat::from_double(J.hi));
    StepApprox out;
    out.n = n;
    out.step = NumStep::from_exact(r);
    out.exact = r;
    out.certified = true;
    return out;
}

// Greedy oscillation partition of exact polynomial data: from each left end x
// take the longest (x, y] with oscillation <= 1/n, value p(y). Affine pieces
// are cut in rational arithmetic; higher degree bisects on the oscillation
// computed from the critical points, aiming slightly below 1/n.
StepApprox poly_greedy(const PiecewisePoly& p0, int n, const Interval& J, size_t max_cells) {
    PiecewisePoly p = p0.restrict(Rat::from_double(J.lo), Rat::from_double(J.hi));
    StepApprox r;
    r.n = n;
    r.step.a = p.lo().to_double();
    r.step.base = p.base_value().to_double();
    const Rat tolR(1, n);
    const double tol = (1.0 / n) * (1 - 1e-12);
    auto push = [&](double y, double v) {
        if (r.step.size() >= max_cells) throw EstimationError("step approximation exceeds the cell budget");
        r.step.ends.push_back(y);
        r.step.vals.push_back(v);
        r.step.residual.push_back(0);
    };
    for (size_t i = 0; i < p.size(); ++i) {
        const Poly& q = p.poly(i);
        const Rat &x0 = p.left(i), &e = p.end(i);
        if (q.degree() <= 0) {
            push(e.to_double(), q(e).to_double());
            continue;
        }
        if (q.degree() == 1) {
            Rat w = tolR / abs(q.c[1]);
            for (Rat y = x0 + w; y < e; y += w) push(y.to_double(), q(y).to_double());
            push(e.to_double(), q(e).to_double());
            continue;
        }
        std::vector<double> c;
        for (const Rat& k : q.c) c.push_back(k.to_double());
        std::vector<double> d;
        for (size_t j = 1; j < c.size(); ++j) d.push_back(c[j] * double(j));
        double lo = x0.to_double(), hi = e.to_double();
        std::vector<double> crit = real_roots(d, lo, hi);
        auto osc = [&](double x, double y) {
            double mn = std::min(q(x), q(y)), mx = std::max(q(x), q(y));
            for (double t : crit)
                if (t > x && t < y) {
                    mn = std::min(mn, q(t));
                    mx = std::max(mx, q(t));
                }
            return mx - mn;
        };
        double x = lo;
        while (x < hi) {
            double y = hi;
            if (osc(x, hi) > tol) {
                double a = x, b = hi;
                for (int it = 0; it < 200 && b - a > 0; ++it) {
                    double m = 0.5 * (a + b);
                    if (!(m > a && m < b)) break;
                    (osc(x, m) <= tol ? a : b) = m;
                }
                y = a > x ? a : b;
            }
            push(y, y == hi ? q(e).to_double() : q(y));
            x = y;
        }
    }
    r.certified = true;
    return r;
}

} // namespace

StepApprox step_approximation(const RegulatedFn& f, int n, const Interval& J, const StepApproxOptions& opt) {
    return step_approximation_levels(f, {n}, J, opt).front();
}

std::vector<StepApprox> step_approximation_levels(const RegulatedFn& f, const std::vector<int>& levels,
                                                  const Interval& J, const StepApproxOptions& opt) {
    if (levels.empty()) return {};
    for (int n : levels)
        if (n < 1) throw DomainError("approximation level must be positive");
    compact_interval(f, J);
    std::vector<StepApprox> out;
    if (const StepFn* s = f.as_step()) {
        for (int n : levels) out.push_back(exact_step(*s, J, n));
        return out;
    }
    if (f.exact()) {
        PiecewisePoly p = *f.to_poly();
        if (p.is_step()) {
            StepFn s = p.to_step();
            for (int n : levels) out.push_back(exact_step(s, J, n));
            return out;
        }
        for (int n : levels) out.push_back(poly_greedy(p, n, J, opt.max_cells));
        return out;
    }
    int nmax = *std::max_element(levels.begin(), levels.end());
    FineBuild fb = build_fine(f, nmax, J.lo, J.hi, opt);
    for (int n : levels) out.push_back(coarsen(fb, n));
    return out;
}

// ----------------------------------------------------------------- lattice

namespace {

bool same_domain(const StepFn& f, const StepFn& g) { return f.lo() == g.lo() && f.hi() == g.hi(); }

RegulatedFn zero_like(const RegulatedFn& f) { return RegulatedFn::constant(0.0, f.domain()); }

} // namespace

RegulatedFn join(const RegulatedFn& f, const RegulatedFn& g) {
    if (f.as_step() && g.as_step()) {
        if (!same_domain(*f.as_step(), *g.as_step())) throw DomainError("join of functions on different intervals");
        return RegulatedFn::step(join(*f.as_step(), *g.as_step()));
    }
    return RegulatedFn::pointwise(RegulatedFn::PwOp::Max, f, g);
}

RegulatedFn meet(const RegulatedFn& f, const RegulatedFn& g) {
    if (f.as_step() && g.as_step()) {
        if (!same_domain(*f.as_step(), *g.as_step())) throw DomainError("meet of functions on different intervals");
        return RegulatedFn::step(meet(*f.as_step(), *g.as_step()));
    }
    return RegulatedFn::pointwise(RegulatedFn::PwOp::Min, f, g);
}

RegulatedFn abs(const RegulatedFn& f) {
    if (f.as_step()) return RegulatedFn::step(abs(*f.as_step()));
    return RegulatedFn::pointwise(RegulatedFn::PwOp::Abs, f);
}

RegulatedFn pos(const RegulatedFn& f) {
    if (f.as_step()) return RegulatedFn::step(pos(*f.as_step()));
    return join(f, zero_like(f));
}

RegulatedFn neg(const RegulatedFn& f) {
    if (f.as_step()) return RegulatedFn::step(neg(*f.as_step()));
    return join(-1.0 * f, zero_like(f));
}

// ------------------------------------------------------------------- norms

NormKind parse_norm_kind(const std::string& s) {
    if (s == "alexiewicz" || s == "A" || s == "a") return NormKind::Alexiewicz;
    if (s == "l1" || s == "L1" || s == "1") return NormKind::L1;
    if (s == "sup" || s == "inf" || s == "linf") return NormKind::Sup;
    throw ConfigError("unknown norm kind '" + s + "'");
}

std::string to_string(NormKind k) {
    switch (k) {
    case NormKind::Alexiewicz: return "alexiewicz";
    case NormKind::L1: return "l1";
    case NormKind::Sup: return "sup";
    }
    return "?";
}

Rat norm_exact(const StepFn& f, NormKind kind) {
    switch (kind) {
    case NormKind::Alexiewicz: return f.alexiewicz_norm();
    case NormKind::L1: return f.l1_norm();
    case NormKind::Sup: return f.sup_norm();
    }
    return Rat(0);
}

std::vector<double> real_roots(const std::vector<double>& c, double lo, double hi) {
    size_t deg = c.size();
    while (deg > 0 && c[deg - 1] == 0) --deg;
    if (deg <= 1) return {};
    auto ev = [&](double x) {
        double r = 0;
        for (size_t i = deg; i-- > 0;) r = r * x + c[i];
        return r;
    };
    std::vector<double> d;
    for (size_t i = 1; i < deg; ++i) d.push_back(c[i] * double(i));
    std::vector<double> pts{lo};
    for (double x : real_roots(d, lo, hi)) pts.push_back(x);
    pts.push_back(hi);
    std::vector<double> roots;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double x0 = pts[i], x1 = pts[i + 1];
        double f0 = ev(x0), f1 = ev(x1);
        if (f0 == 0) { roots.push_back(x0); continue; }
        if (f0 * f1 > 0) continue;
        for (int it = 0; it < 200 && x1 - x0 > 0; ++it) {
            double m = 0.5 * (x0 + x1);
            if (m <= x0 || m >= x1) break;
            double fm = ev(m);
            if ((fm < 0) == (f0 < 0)) { x0 = m; f0 = fm; } else x1 = m;
        }
        roots.push_back(0.5 * (x0 + x1));
    }
    if (ev(hi) == 0) roots.push_back(hi);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

namespace {

std::vector<double> to_d(const Poly& p) {
    std::vector<double> c;
    for (auto& r : p.c) c.push_back(r.to_double());
    return c;
}

double eval_d(const std::vector<double>& c, double x) {
    double r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

NormValue poly_norm(const PiecewisePoly& p0, NormKind kind, double a, double b) {
    PiecewisePoly cum = p0.cumulative();
    NormValue out;
    double sup = std::fabs(p0(a)), l1 = 0;
    double phi_a = cum(a), mx = 0, mn = 0;
    for (size_t i = 0; i < p0.size(); ++i) {
        double l = std::max(p0.left(i).to_double(), a), e = std::min(p0.end(i).to_double(), b);
        if (!(l < e)) continue;
        std::vector<double> c = to_d(p0.poly(i));
        std::vector<double> pts{l};
        for (double x : real_roots(c, l, e)) pts.push_back(x);
        pts.push_back(e);
        // sup: endpoints and critical points
        std::vector<double> dc;
        for (size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * double(k));
        sup = std::max({sup, std::fabs(eval_d(c, l)), std::fabs(eval_d(c, e))});
        for (double x : real_roots(dc, l, e)) sup = std::max(sup, std::fabs(eval_d(c, x)));
        // l1 and cumulative extrema: split at sign changes
        std::vector<double> ac = to_d(p0.poly(i).antiderivative());
        for (size_t k = 0; k + 1 < pts.size(); ++k) l1 += std::fabs(eval_d(ac, pts[k + 1]) - eval_d(ac, pts[k]));
        for (double x : pts) {
            double phi = cum(x) - phi_a;
            mx = std::max(mx, phi);
            mn = std::min(mn, phi);
        }
    }
    out.value = kind == NormKind::Sup ? sup : kind == NormKind::L1 ? l1 : mx - mn;
    out.error = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, out.value);
    out.certified = false;
    return out;
}

NormValue sampled_norm(const SampledFn& s, NormKind kind, double a, double b) {
    const Grid& g = *s.grid;
    double sup = 0, l1 = 0, phi = 0, mx = 0, mn = 0;
    bool first = true;
    for (size_t k = 0; k + 1 < g.size(); ++k) {
        double l = std::max(g.t[k], a), e = std::min(g.t[k + 1], b);
        if (!(l < e)) continue;
        double h = g.t[k + 1] - g.t[k];
        auto lin = [&](double t) { return s.right[k] + (s.val[k + 1] - s.right[k]) * ((t - g.t[k]) / h); };
        double r = lin(l), v = (e == g.t[k + 1]) ? s.val[k + 1] : lin(e), w = e - l;
        if (first) {
            sup = std::fabs(l == g.t[0] ? s.val[0] : r);
            first = false;
        }
        sup = std::max({sup, std::fabs(r), std::fabs(v)});
        if (r * v >= 0) l1 += 0.5 * std::fabs(r + v) * w;
        else l1 += 0.5 * (r * r + v * v) / std::fabs(r - v) * w;
        if (r * v < 0) {
            double z = r / (r - v) * w;
            double pz = phi + 0.5 * r * z;
            mx = std::max(mx, pz);
            mn = std::min(mn, pz);
        }
        phi += 0.5 * (r + v) * w;
        mx = std::max(mx, phi);
        mn = std::min(mn, phi);
    }
    NormValue out;
    out.value = kind == NormKind::Sup ? sup : kind == NormKind::L1 ? l1 : mx - mn;
    out.error = 1e-14 * std::max(1.0, out.value);
    return out;
}

NormValue numeric_norm(const RegulatedFn& F, NormKind kind, double a, double b, double tol) {
    NormValue out;
    std::vector<double> pts{a};
    for (double x : F.break_points(a, b))
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    if (kind == NormKind::Sup) {
        double best = 0, upper = 0;
        const int per = 256;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            double l = pts[i], e = pts[i + 1];
            for (int k = 0; k < per; ++k) {
                double x = l + (e - l) * k / per, y = l + (e - l) * (k + 1) / per;
                double v = F(y);
                best = std::max(best, std::fabs(v));
                Iv en = F.enclose(x, y);
                if (!en.bounded()) throw EstimationError("sup norm: function not bounded near [" + std::to_string(x) + ", " + std::to_string(y) + "]");
                upper = std::max(upper, en.mag());
            }
        }
        best = std::max(best, std::fabs(F(a)));
        out.value = best;
        out.error = upper - best;
        return out;
    }
    try {
        if (kind == NormKind::L1) {
            QuadResult q = integrate_fn(abs(F), a, b, tol);
            out.value = q.value;
            out.error = q.error;
            return out;
        }
        // cumulative extrema on panels
        const int per = 64;
        size_t panels = (pts.size() - 1) * per;
        double phi = 0, mx = 0, mn = 0, err = 0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            double l = pts[i], e = pts[i + 1];
            for (int k = 0; k < per; ++k) {
                double x = l + (e - l) * k / per, y = l + (e - l) * (k + 1) / per;
                QuadResult q = integrate_fn(F, x, y, tol / panels);
                phi += q.value;
                err += q.error;
                mx = std::max(mx, phi);
                mn = std::min(mn, phi);
            }
        }
        out.value = mx - mn;
        out.error = 2 * err;
        return out;
    } catch (const IntegrabilityError& e) {
        throw EstimationError(std::string("norm estimate failed: ") + e.what());
    }
}

} // namespace

NormValue norm(const RegulatedFn& F, NormKind kind, const Interval& J, double tol) {
    if (!J.bounded()) throw UnsupportedError("norm over an unbounded interval " + J.str());
    const Interval& d = F.domain();
    if (!d.contains(J.lo) || !d.contains(J.hi)) throw DomainError("interval " + J.str() + " outside domain " + d.str());
    std::optional<StepFn> st;
    if (const StepFn* s = F.as_step()) st = *s;
    else if (F.exact()) {
        PiecewisePoly p = *F.to_poly();
        if (p.is_step()) st = p.to_step();
        else return poly_norm(p, kind, J.lo, J.hi);
    }
    if (st) {
        StepFn r = st->restrict(Rat::from_double(J.lo), Rat::from_double(J.hi));
        Rat v = norm_exact(r, kind);
        NormValue out;
        out.exact = v;
        out.value = v.to_double();
        out.certified = true;
        return out;
    }
    if (const SampledFn* s = F.as_sampled()) return sampled_norm(*s, kind, J.lo, J.hi);
    return numeric_norm(F, kind, J.lo, J.hi, tol);
}

// --------------------------------------------------------- countable steps

void CountableStep::check(long prefix) const {
    if (head.lo() != a) throw StructureError("countable step head does not start at a");
    Rat prev_end = head.hi();
    std::optional<Rat> prev_c;
    for (long m = m0; m < m0 + prefix; ++m) {
        StepPiece p = cell(m);
        if (p.x != prev_end) throw StructureError("tail cells are not contiguous at m=" + std::to_string(m));
        if (!(p.x < p.y) || p.y >= b) throw StructureError("tail cell out of order at m=" + std::to_string(m));
        Rat c = p.v * (p.y - p.x);
        if (alternating_decreasing && prev_c) {
            if (c.sign() * prev_c->sign() >= 0 || !(lrp::abs(c) < lrp::abs(*prev_c)))
                throw StructureError("tail integrals do not alternate with decreasing size at m=" + std::to_string(m));
        }
        if (abs_value && lrp::abs(p.v) != *abs_value) throw StructureError("tail values change magnitude at m=" + std::to_string(m));
        prev_c = c;
        prev_end = p.y;
    }
}

CountableStep CountableStep::minus(const StepFn& g) const {
    if (g.lo() != a || g.hi() != b) throw DomainError("countable step and step data live on different intervals");
    if (!g.val(g.size() - 1).is_zero()) throw UnsupportedError("subtracted step data must vanish next to the accumulation point");
    Rat L = g.left(g.size() - 1);
    long M = m0;
    Rat xM = head.hi();
    std::vector<StepPiece> pieces = head.pieces();
    while (xM < L) {
        StepPiece p = cell(M);
        pieces.push_back(p);
        xM = p.y;
        ++M;
    }
    StepFn nh(a, head.base_value(), pieces);
    CountableStep r = *this;
    r.head = nh - g.restrict(a, xM);
    r.m0 = M;
    return r;
}

double CountableStep::value(double t) const {
    Rat rt = Rat::from_double(t);
    if (rt < a || rt > b) throw DomainError("point outside countable step domain");
    if (rt <= head.hi()) return head(rt).to_double();
    if (rt == b) return 0.0;
    long hi = 1;
    while (cell(m0 + hi).y < rt) hi *= 2;
    long lo = 0;
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (cell(m0 + mid).y < rt) lo = mid + 1;
        else hi = mid;
    }
    return cell(m0 + lo).v.to_double();
}

Rat norm_exact(const CountableStep& f, NormKind kind) {
    f.check(64);
    switch (kind) {
    case NormKind::L1:
        if (!f.abs_value) throw UnsupportedError("exact L1 norm needs a constant tail magnitude");
        return f.head.l1_norm() + *f.abs_value * (f.b - f.head.hi());
    case NormKind::Sup:
        if (!f.abs_value) throw UnsupportedError("exact sup norm needs a constant tail magnitude");
        return lrp::max(f.head.sup_norm(), *f.abs_value);
    case NormKind::Alexiewicz: {
        if (!f.alternating_decreasing) throw UnsupportedError("exact Alexiewicz norm needs alternating decreasing tail integrals");
        // head: cumulative values at the cell ends
        Rat phi(0), mx(0), mn(0);
        for (size_t i = 0; i < f.head.size(); ++i) {
            phi += f.head.val(i) * (f.head.end(i) - f.head.left(i));
            mx = lrp::max(mx, phi);
            mn = lrp::min(mn, phi);
        }
        // tail partial sums stay between the first two (alternating series)
        StepPiece p1 = f.cell(f.m0), p2 = f.cell(f.m0 + 1);
        Rat s1 = phi + p1.v * (p1.y - p1.x);
        Rat s2 = s1 + p2.v * (p2.y - p2.x);
        mx = lrp::max(mx, lrp::max(s1, s2));
        mn = lrp::min(mn, lrp::min(s1, s2));
        return mx - mn;
    }
    }
    return Rat(0);
}

// ------------------------------------------------------------ local metric

MetricValue local_metric(const RegulatedFn& F, const RegulatedFn& G, NormKind kind,
                         const std::vector<Interval>& exhaustion, size_t depth) {
    if (exhaustion.empty()) throw ConfigError("local metric needs a nonempty exhaustion");
    if (depth == 0) throw ConfigError("local metric depth must be positive");
    RegulatedFn H = F - G;
    MetricValue r;
    size_t n = std::min(depth, exhaustion.size());
    for (size_t i = 0; i < n; ++i) {
        if (i > 0 && !(exhaustion[i].lo <= exhaustion[i - 1].lo && exhaustion[i].hi >= exhaustion[i - 1].hi))
            throw ConfigError("exhaustion intervals must increase");
        double v = norm(H, kind, exhaustion[i]).value;
        r.value += v / (1 + v);
        ++r.terms;
    }
    r.tail_bound = double(exhaustion.size() - n);
    return r;
}

// ---------------------------------------------------------------- classify

namespace {

bool bounded_on(const RegulatedFn& F, double x, double y, int depth) {
    Iv e = F.enclose(x, y);
    if (e.bounded() && !e.is_nan()) return true;
    if (depth == 0) return false;
    double m = 0.5 * (x + y);
    return bounded_on(F, x, m, depth - 1) && bounded_on(F, m, y, depth - 1);
}

// smallest k (from 4) for which the end cell of relative size 2^-k is bounded; -1 when none
int end_bounded(const RegulatedFn& F, double x, double y, double sigma) {
    double len = y - x;
    for (int k = 4; k <= 40; ++k) {
        double eps = std::ldexp(len, -k);
        Iv e = sigma > 0 ? F.enclose(x, x + eps) : F.enclose(y - eps, y);
        if (e.bounded() && !e.is_nan()) return k;
    }
    return -1;
}

} // namespace

Classification classify(const RegulatedFn& F, const Interval& J) {
    if (!J.bounded()) throw UnsupportedError("classification on unbounded intervals needs a compact exhaustion");
    Classification c;
    if (F.exact() || F.as_sampled()) {
        c.locally_riemann = c.locally_lebesgue = c.locally_hk = true;
        c.certified = F.exact();
        c.note = F.exact() ? "exact piecewise data" : "sampled data";
        return c;
    }
    std::vector<double> pts{J.lo};
    for (double x : F.break_points(J.lo, J.hi))
        if (x > J.lo && x < J.hi) pts.push_back(x);
    pts.push_back(J.hi);
    struct Bad { double x, sigma, span; };
    std::vector<Bad> bad;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double x = pts[i], y = pts[i + 1];
        int kl = end_bounded(F, x, y, 1), kr = end_bounded(F, x, y, -1);
        if (kl < 0) bad.push_back({x, 1, y - x});
        if (kr < 0) bad.push_back({y, -1, y - x});
        double ml = x + std::ldexp(y - x, -(kl < 0 ? 4 : kl)), mr = y - std::ldexp(y - x, -(kr < 0 ? 4 : kr));
        if (ml < mr && !bounded_on(F, ml, mr, 24)) {
            c.note += "unbounded inside (" + std::to_string(x) + ", " + std::to_string(y) + "); ";
            bad.push_back({0.5 * (ml + mr), 0, y - x});
        }
    }
    for (auto& b : bad) c.unbounded_at.push_back(b.x);
    std::sort(c.unbounded_at.begin(), c.unbounded_at.end());
    c.unbounded_at.erase(std::unique(c.unbounded_at.begin(), c.unbounded_at.end()), c.unbounded_at.end());
    c.locally_riemann = bad.empty();
    c.certified = false;
    if (c.locally_riemann) {
        c.locally_lebesgue = c.locally_hk = true;
        c.note += "bounded enclosures";
        return c;
    }
    bool leb = true, hk = true;
    for (auto& b : bad) {
        if (b.sigma == 0) { leb = hk = false; continue; }
        double d = std::min(0.25 * b.span, 0.05);
        Shells sh = shell_integrals(F, b.x, b.x + b.sigma * d, 8);
        if (!shells_decay(sh.absolute)) leb = false;
        if (!shells_decay(sh.signed_)) hk = false;
    }
    c.locally_lebesgue = leb;
    c.locally_hk = hk || leb;
    c.note += "shell test at " + std::to_string(bad.size()) + " singular sides";
    return c;
}

// ------------------------------------------------------------- integration

QuadResult integrate_regulated(const RegulatedFn& F, double a, double b, double tol) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    const Interval& d = F.domain();
    if (!d.contains(a) || !d.contains(b)) throw DomainError("integration limits outside the domain " + d.str());
    if (F.exact()) return integrate_fn(F, a, b, tol);
    if (!F.as_sampled()) {
        if (auto P = F.closed_primitive()) {
            QuadResult r;
            r.value = P->value(b) - P->value(a);
            r.error = 8 * std::numeric_limits<double>::epsilon() * (std::fabs(P->value(b)) + std::fabs(P->value(a)));
            r.certified = true;
            r.method = "registry primitive";
            return r;
        }
    }
    return integrate_fn(F, a, b, tol);
}

// ------------------------------------------------------- derivative check

FdReport fd_derivative_check(const RegulatedFn& F, const RegulatedFn& G, const std::vector<double>& points, double h0) {
    if (!(h0 > 0)) throw DomainError("step size must be positive");
    FdReport rep;
    const Interval& dom = F.domain();
    for (double t : points) {
        FdPoint p;
        p.t = t;
        if (!dom.contains(t) || !G.domain().contains(t)) throw DomainError("check point outside the domain");
        double span = 0.5;
        std::vector<double> br = G.break_points(std::max(dom.lo, t - span), std::min(dom.hi, t + span));
        double dist = span;
        for (double x : br) dist = std::min(dist, std::fabs(x - t));
        if (dist < 1e-12) {
            p.skipped = true;
            p.note = "point lies in the discontinuity set";
            rep.points.push_back(p);
            ++rep.skipped;
            continue;
        }
        double edge = std::min(t - dom.lo, dom.hi - t);
        if (!(edge > 0)) {
            p.skipped = true;
            p.note = "point at the domain boundary";
            rep.points.push_back(p);
            ++rep.skipped;
            continue;
        }
        double h = std::min({h0, 0.25 * dist, 0.05 * dist * dist, 0.5 * edge});
        // Romberg on the central difference, error series in h^2
        const int L = 4;
        double R[L][L];
        for (int i = 0; i < L; ++i) {
            double hi = std::ldexp(h, -i);
            R[i][0] = (F(t + hi) - F(t - hi)) / (2 * hi);
            for (int j = 1; j <= i; ++j) R[i][j] = R[i][j - 1] + (R[i][j - 1] - R[i - 1][j - 1]) / (std::ldexp(1.0, 2 * j) - 1);
        }
        p.fd = R[L - 1][L - 1];
        p.g = G(t);
        p.deviation = std::fabs(p.fd - p.g);
        rep.max_deviation = std::max(rep.max_deviation, p.deviation);
        ++rep.checked;
        rep.points.push_back(p);
    }
    return rep;
}

} // namespace lrp
