#include "lrp/integral.hpp"
#include "lrp/error.hpp"

#include <algorithm>
#include <cmath>

namespace lrp {

std::string to_string(Space s) {
    switch (s) {
    case Space::LD: return "LD";
    case Space::LL: return "LL";
    case Space::LR: return "LR";
    }
    return "?";
}

Space parse_space(const std::string& s) {
    if (s == "LD" || s == "ld") return Space::LD;
    if (s == "LL" || s == "ll") return Space::LL;
    if (s == "LR" || s == "lr") return Space::LR;
    throw ConfigError("unknown space tag '" + s + "' (LD, LL, LR)");
}

namespace {

void need_in(const Interval& d, double x, const char* what) {
    if (!d.contains(x)) throw DomainError(std::string(what) + " " + std::to_string(x) + " outside " + d.str());
}

// right limit, with F(b+) := F(b) at a closed maximum
std::optional<double> right_of(const RegulatedFn& F, double x) {
    const Interval& d = F.domain();
    if (x == d.hi) return F.value(x);
    Limits l = F.limits(x);
    return l.right;
}

// one-sided limit from enclosures over shrinking cells
std::optional<double> enclosure_limit(const RegulatedFn& F, double x, int side) {
    const Interval& d = F.domain();
    double span = side > 0 ? d.hi - x : x - d.lo;
    if (!std::isfinite(span) || span <= 0) span = 1;
    for (int k = 1; k <= 80; ++k) {
        double h = span * std::ldexp(1.0, -k);
        Iv e = side > 0 ? F.enclose(x, x + h) : F.enclose(x - h, x);
        if (!e.bounded()) continue;
        if (e.width() <= 1e-13 * std::max(1.0, e.mag())) return e.mid();
    }
    return std::nullopt;
}

double right_limit_checked(const RegulatedFn& F, double x) {
    if (auto r = right_of(F, x)) return *r;
    if (auto r = enclosure_limit(F, x, +1)) return *r;
    throw LimitError("primitive has no right limit at " + std::to_string(x));
}

double left_limit_checked(const RegulatedFn& F, double x) {
    if (x == F.domain().lo) return F.value(x);
    Limits l = F.limits(x);
    if (l.left) return *l.left;
    if (auto r = enclosure_limit(F, x, -1)) return *r;
    throw LimitError("primitive has no left limit at " + std::to_string(x));
}

RegulatedFn shift_const(const RegulatedFn& F, double c) {
    if (c == 0) return F;
    if (F.exact()) {
        PiecewisePoly p = *F.to_poly();
        Rat rc = Rat::from_double(c);
        return RegulatedFn::poly(p + PiecewisePoly(p.lo(), p.hi(), Poly::constant(rc)));
    }
    return RegulatedFn::lincomb({{1.0, F}, {1.0, RegulatedFn::constant(c, F.domain())}});
}

// F - F(x) (or F - F(x+)), exact for exact data
RegulatedFn anchor_at(const RegulatedFn& F, double x, bool right) {
    if (F.exact()) {
        PiecewisePoly p = *F.to_poly();
        Rat rx = Rat::from_double(x);
        Rat v = right && rx != p.hi() ? *p.right_limit(rx) : p(rx);
        if (v.is_zero()) return F;
        return RegulatedFn::poly(p - PiecewisePoly(p.lo(), p.hi(), Poly::constant(v)));
    }
    return shift_const(F, -(right ? right_limit_checked(F, x) : F.value(x)));
}

} // namespace

Distribution Distribution::from_primitive(RegulatedFn F, Space tag, bool normalize) {
    if (normalize) {
        double lo = F.domain().lo;
        if (!std::isfinite(lo)) throw UnsupportedError("normalisation needs a finite left endpoint");
        F = anchor_at(F, lo, true);
    }
    if (tag != Space::LD && F.domain().compact()) {
        Classification c = classify(F, F.domain());
        if (tag == Space::LR && !c.locally_riemann)
            throw ConfigError("primitive is not locally Riemann integrable; LR tag rejected");
        if (tag == Space::LL && !c.locally_lebesgue)
            throw ConfigError("primitive is not locally Lebesgue integrable; LL tag rejected");
    }
    Distribution d;
    d.primitive = std::move(F);
    d.tag = tag;
    d.normalized = normalize;
    return d;
}

Distribution Distribution::from_primitive_auto(RegulatedFn F, bool normalize) {
    Classification c = classify(F, F.domain());
    Space s = c.locally_riemann ? Space::LR : c.locally_lebesgue ? Space::LL : Space::LD;
    Distribution d = from_primitive(std::move(F), Space::LD, normalize);
    d.tag = s;
    return d;
}

Distribution Distribution::from_density(const RegulatedFn& h, Space tag) {
    const Interval& dom = h.domain();
    if (!dom.bounded()) throw UnsupportedError("density primitive needs a bounded interval");
    RegulatedFn F;
    if (h.exact()) {
        F = RegulatedFn::poly(h.to_poly()->cumulative());
    } else if (auto p = h.closed_primitive()) {
        F = shift_const(*p, -right_limit_checked(*p, dom.lo));
    } else {
        // numeric primitive on a fine grid
        auto grid = Grid::uniform(dom.lo, dom.hi, 4096, h.break_points(dom.lo, dom.hi));
        std::vector<double> v(grid->size(), 0.0);
        for (size_t k = 1; k < grid->size(); ++k)
            v[k] = v[k - 1] + integrate_fn(h, grid->t[k - 1], grid->t[k], 1e-13).value;
        F = RegulatedFn::sampled(grid, v, v);
    }
    Distribution d;
    d.primitive = F;
    d.tag = tag;
    d.normalized = true;
    return d;
}

Distribution Distribution::dirac(double a, double b) {
    if (!(a < 0 && 0 < b)) throw DomainError("Dirac delta needs 0 inside the interval");
    StepFn h = StepFn::indicator(Rat::from_double(a), Rat::from_double(b), Rat(0), Rat::from_double(b));
    Distribution d;
    d.primitive = RegulatedFn::step(h).with_label("H1");
    d.tag = Space::LR;
    d.normalized = true;
    return d;
}

double primitive_integral(const Distribution& f, double a, double b, Endpoints mode) {
    const RegulatedFn& F = f.primitive;
    need_in(F.domain(), a, "endpoint");
    need_in(F.domain(), b, "endpoint");
    if (b < a) return -primitive_integral(f, b, a, mode);
    if (a == b && mode == Endpoints::LeftClosed) return 0.0;
    double lo = (mode == Endpoints::LeftClosed || mode == Endpoints::Closed) ? F.value(a) : right_limit_checked(F, a);
    double hi = (mode == Endpoints::LeftClosed || mode == Endpoints::Open) ? F.value(b) : right_limit_checked(F, b);
    return hi - lo;
}

Rat primitive_integral_exact(const Distribution& f, const Rat& a, const Rat& b) {
    auto p = f.primitive.to_poly();
    if (!p) throw UnsupportedError("exact integral needs exact primitive data");
    if (a < p->lo() || a > p->hi() || b < p->lo() || b > p->hi()) throw DomainError("endpoint outside the data interval");
    return (*p)(b) - (*p)(a);
}

RegulatedFn cumulative(const Distribution& f, double a, double c) {
    const RegulatedFn& F = f.primitive;
    need_in(F.domain(), a, "anchor");
    if (F.exact()) {
        PiecewisePoly p = *F.to_poly();
        Rat shift = Rat::from_double(c) - p(Rat::from_double(a));
        return RegulatedFn::poly(p + PiecewisePoly(p.lo(), p.hi(), Poly::constant(shift)));
    }
    return shift_const(F, c - F.value(a));
}

double TestFn::operator()(double t) const {
    double s = (t - center) / radius;
    if (!(std::fabs(s) < 1)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double TestFn::derivative(double t) const {
    double s = (t - center) / radius;
    if (!(std::fabs(s) < 1)) return 0.0;
    double q = 1.0 - s * s;
    return std::exp(1.0 - 1.0 / q) * (-2.0 * s / (q * q)) / radius;
}

QuadResult pairing(const Distribution& f, const TestFn& phi, double tol) {
    const RegulatedFn& F = f.primitive;
    const Interval& d = F.domain();
    if (!(phi.radius > 0)) throw ConfigError("test function radius must be positive");
    if (!(phi.lo() > d.lo && phi.hi() < d.hi)) throw DomainError("test function support escapes the domain");
    QuadResult out;
    out.method = "exact cells";
    if (auto p = F.to_poly(); p && p->is_step()) {
        // -int_(x,y] v phi' = v (phi(x) - phi(y)) on every cell
        StepFn s = p->to_step();
        double acc = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            double x = std::max(s.left(i).to_double(), phi.lo()), y = std::min(s.end(i).to_double(), phi.hi());
            if (x < y) acc += s.val(i).to_double() * (phi(x) - phi(y));
        }
        out.value = acc;
        out.error = 1e-15 * (1 + std::fabs(acc));
        return out;
    }
    // phi' as an expression; trim the support to q = 1 - s^2 >= q0, where the
    // dropped tails contribute at most sup|F| phi(edge) each (phi is monotone there)
    using namespace sym;
    Expr s = (t() - Expr(phi.center)) * Expr(1.0 / phi.radius);
    Expr q = Expr(1.0) - s * s;
    Expr dphi = exp(Expr(1.0) - recip(q)) * Expr(-2.0 / phi.radius) * s * pow(recip(q), 2);
    RegulatedFn integrand = RegulatedFn::product(F, RegulatedFn::symbolic(dphi, d, "phi'"));
    Iv Fe = hull(F.enclose(phi.lo(), phi.center), F.enclose(phi.center, phi.hi()));
    double supF = Fe.bounded() ? Fe.mag() : INFINITY;
    if (!std::isfinite(supF)) throw EstimationError("primitive unbounded on the test function support");
    double q0 = 0.5;
    while (q0 > 1e-3 && 2.0 * supF * std::exp(1.0 - 1.0 / q0) > tol / 4) q0 *= 0.9;
    while (2.0 * supF * std::exp(1.0 - 1.0 / q0) > tol / 4) q0 *= 0.5;
    double delta = phi.radius * (1.0 - std::sqrt(1.0 - q0));
    QuadResult qr = integrate_fn(integrand, phi.lo() + delta, phi.hi() - delta, tol / 2);
    out.method = "quadrature (" + qr.method + ")";
    out.value = -qr.value;
    out.error = qr.error + 2.0 * supF * std::exp(1.0 - 1.0 / q0);
    out.evals = qr.evals;
    out.certified = qr.certified;
    return out;
}

double hake(const Distribution& f, HakeSide side, double c) {
    const RegulatedFn& F = f.primitive;
    const Interval& d = F.domain();
    need_in(d, c, "point");
    if (side == HakeSide::LeftEndpoint) {
        if (!std::isfinite(d.lo)) throw UnsupportedError("Hake limit at an infinite endpoint");
        double lo = (d.lo == d.hi) ? F.value(d.lo) : right_limit_checked(F, d.lo);
        return F.value(c) - lo;
    }
    if (!std::isfinite(d.hi)) throw UnsupportedError("Hake limit at an infinite endpoint");
    return left_limit_checked(F, d.hi) - F.value(c);
}

Multiplier Multiplier::from_density(RegulatedFn h, double anchor) {
    const Interval& dom = h.domain();
    if (!dom.compact()) throw MultiplierError("multiplier density needs a compact interval");
    need_in(dom, anchor, "anchor");
    Multiplier m;
    m.anchor = anchor;
    m.density = h;
    if (h.exact()) {
        PiecewisePoly p = *h.to_poly();
        if (p.is_step()) {
            StepFn s = p.to_step();
            m.sup_h_exact = s.sup_norm();
            m.var_h_exact = s.variation();
            m.var_g_exact = s.l1_norm();
            m.exact = true;
        } else {
            m.sup_h_exact = std::nullopt;
        }
        PiecewisePoly cum = p.cumulative();
        Rat shift = -cum(Rat::from_double(anchor));
        m.g = RegulatedFn::poly(cum + PiecewisePoly(cum.lo(), cum.hi(), Poly::constant(shift)));
        if (m.exact) {
            m.sup_h = m.sup_h_exact->to_double();
            m.var_h = m.var_h_exact->to_double();
            m.var_g = m.var_g_exact->to_double();
            return m;
        }
        // polynomial pieces: variation from critical points plus jumps
        m.sup_h = norm(h, NormKind::Sup, dom).value;
        m.var_g = norm(h, NormKind::L1, dom).value;
        double v = std::fabs(p(p.left(0).to_double()) - p.base_value().to_double());
        for (size_t i = 0; i < p.size(); ++i) {
            double l = p.left(i).to_double(), e = p.end(i).to_double();
            std::vector<double> c;
            for (auto& r : p.poly(i).derivative().c) c.push_back(r.to_double());
            std::vector<double> pts{l};
            for (double x : real_roots(c, l, e)) pts.push_back(x);
            pts.push_back(e);
            for (size_t k = 0; k + 1 < pts.size(); ++k) v += std::fabs(p.poly(i)(pts[k + 1]) - p.poly(i)(pts[k]));
            if (i + 1 < p.size()) v += std::fabs(p.poly(i + 1)(e) - p.poly(i)(e));
        }
        m.var_h = v;
        return m;
    }
    NormValue sup = norm(h, NormKind::Sup, dom);
    if (!std::isfinite(sup.value)) throw MultiplierError("multiplier density is unbounded");
    m.sup_h = sup.value;
    m.var_g = norm(h, NormKind::L1, dom).value;
    // sampled variation (a lower estimate; not certified)
    const size_t N = 100000;
    double v = 0, prev = h.value(dom.lo);
    for (size_t k = 1; k <= N; ++k) {
        double x = dom.lo + (dom.hi - dom.lo) * double(k) / double(N);
        double cur = h.value(x);
        v += std::fabs(cur - prev);
        prev = cur;
    }
    m.var_h = v;
    Distribution G = Distribution::from_density(h);
    m.g = shift_const(G.primitive, -G.primitive.value(anchor));
    return m;
}

PartsResult parts(const Distribution& f, const Multiplier& g, double a, double b, double tol) {
    if (!(a < b)) throw DomainError("parts needs a < b");
    need_in(f.domain(), a, "endpoint");
    need_in(f.domain(), b, "endpoint");
    need_in(g.density.domain(), a, "endpoint");
    need_in(g.density.domain(), b, "endpoint");
    if (!std::isfinite(g.sup_h)) throw MultiplierError("multiplier density is unbounded");
    if (f.tag == Space::LD && !std::isfinite(g.var_h)) throw MultiplierError("LD multiplier density must have bounded variation");

    PartsResult r;
    Interval J = Interval::closed(a, b);
    const RegulatedFn& F0 = f.primitive;
    RegulatedFn F = anchor_at(F0, a, false);
    double Fb = F.value(b), gb = g(b);

    auto pf = F.to_poly();
    auto ph = g.density.to_poly();
    if (pf && ph) {
        Rat ra = Rat::from_double(a), rb = Rat::from_double(b);
        PiecewisePoly P = pf->restrict(ra, rb), Hh = ph->restrict(ra, rb);
        PiecewisePoly G = g.g.to_poly()->restrict(ra, rb);
        Rat v = P(rb) * G(rb) - (P * Hh).integral(ra, rb);
        r.exact = v;
        r.value = v.to_double();
    } else {
        std::vector<double> cuts{a};
        for (double x : F.break_points(a, b)) cuts.push_back(x);
        for (double x : g.density.break_points(a, b)) cuts.push_back(x);
        cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        double acc = 0, err = 0;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (!(cuts[i] < cuts[i + 1])) continue;
            QuadResult q = gauss_kronrod([&](double t) { return F.value(t) * g.density.value(t); }, cuts[i], cuts[i + 1],
                                         tol / double(cuts.size()));
            acc += q.value;
            err += q.error;
        }
        r.value = Fb * gb - acc;
        r.error = err;
    }
    double base = std::fabs(Fb) * std::fabs(gb);
    if (f.tag == Space::LD) r.bound = base + norm(F, NormKind::Alexiewicz, J).value * (g.sup_h + g.var_h);
    else r.bound = base + norm(F, NormKind::L1, J).value * g.sup_h;
    if (std::fabs(r.value) > r.bound * (1 + 1e-12) + r.error + 1e-14)
        throw EstimationError("integration by parts bound violated: |" + std::to_string(r.value) + "| > " +
                              std::to_string(r.bound));
    return r;
}

Distribution product(const Distribution& f, const Distribution& g) {
    if (f.tag != Space::LR || g.tag != Space::LR)
        throw UnsupportedError("the product is defined in the LR algebra only");
    if (!(f.domain() == g.domain())) throw DomainError("product of distributions on different intervals");
    if (!f.domain().compact()) throw UnsupportedError("the LR algebra needs a compact interval");
    Distribution d;
    const RegulatedFn &F = f.primitive, &G = g.primitive;
    if (F.as_step() && G.as_step()) d.primitive = RegulatedFn::step(*F.as_step() * *G.as_step());
    else if (F.exact() && G.exact()) d.primitive = RegulatedFn::poly(*F.to_poly() * *G.to_poly());
    else d.primitive = RegulatedFn::product(F, G);
    d.tag = Space::LR;
    d.normalized = f.normalized && g.normalized;
    return d;
}

bool primitive_leq(const Distribution& f, const Distribution& g, size_t samples) {
    const RegulatedFn &F = f.primitive, &G = g.primitive;
    if (F.as_step() && G.as_step()) return F.as_step()->leq(*G.as_step());
    const Interval& d = F.domain();
    if (!d.bounded()) throw UnsupportedError("primitive order check needs a bounded interval");
    std::vector<double> pts;
    for (size_t k = 0; k < samples; ++k) pts.push_back(d.lo + (d.hi - d.lo) * double(k) / double(samples - 1));
    for (double x : F.break_points(d.lo, d.hi)) pts.push_back(x);
    for (double x : G.break_points(d.lo, d.hi)) pts.push_back(x);
    for (double x : pts)
        if (d.contains(x) && F.value(x) > G.value(x)) return false;
    return true;
}

} // namespace lrp
