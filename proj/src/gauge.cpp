#include "lrp/gauge.hpp"

#include <algorithm>
#include <cmath>

namespace lrp {

LeftGauge LeftGauge::width(std::function<double(double)> delta) {
    LeftGauge g;
    g.delta_ = std::move(delta);
    return g;
}

LeftGauge LeftGauge::constant(double delta) {
    if (!(delta > 0)) throw ConfigError("gauge width must be positive");
    return width([delta](double) { return delta; });
}

LeftGauge LeftGauge::table(std::vector<std::pair<double, double>> cells) {
    if (cells.empty()) throw ConfigError("empty gauge table");
    std::sort(cells.begin(), cells.end());
    for (size_t i = 0; i < cells.size(); ++i) {
        if (!(cells[i].first < cells[i].second)) throw StructureError("gauge table cell (x, y] needs x < y");
        if (i > 0 && cells[i].first != cells[i - 1].second) throw StructureError("gauge table cells must be contiguous");
    }
    LeftGauge g;
    g.table_ = std::move(cells);
    return g;
}

double LeftGauge::left_end(double y) const {
    if (delta_) {
        double d = delta_(y);
        if (!(d > 0)) throw StructureError("gauge width must be positive at y=" + std::to_string(y));
        return y - d;
    }
    auto it = std::lower_bound(table_.begin(), table_.end(), y,
                               [](const std::pair<double, double>& c, double v) { return c.second < v; });
    if (it == table_.end() || !(it->first < y)) throw StructureError("gauge table does not cover y=" + std::to_string(y));
    return it->first;
}

LeftGauge intersect(const LeftGauge& g1, const LeftGauge& g2) {
    return LeftGauge::width([g1, g2](double y) { return y - std::max(g1.left_end(y), g2.left_end(y)); });
}

void LeftPartition::validate() const {
    if (cells.empty()) throw StructureError("empty left partition");
    double start = complete ? a : residual_hi;
    if (cells.front().x != start) throw StructureError("left partition does not start at the left end");
    if (cells.back().y != b) throw StructureError("left partition does not reach the right end");
    for (size_t i = 0; i < cells.size(); ++i) {
        const LeftCell& c = cells[i];
        if (!(c.x < c.y)) throw StructureError("degenerate cell in left partition");
        if (!(c.x < c.tag && c.tag <= c.y)) throw StructureError("tag outside its cell (x, y]");
        if (i > 0 && c.x != cells[i - 1].y) throw StructureError("left partition cells overlap or leave a gap");
    }
}

bool LeftPartition::fine(const LeftGauge& g) const {
    for (const LeftCell& c : cells)
        if (c.x < g.left_end(c.y)) return false;
    return true;
}

LeftPartition fine_partition(const LeftGauge& g, double a, double b, size_t max_cells) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("fine partition needs finite a < b");
    std::vector<LeftCell> rev;
    double y = b;
    while (y > a) {
        if (rev.size() >= max_cells) {
            LeftPartition p;
            p.a = a;
            p.b = b;
            p.cells.assign(rev.rbegin(), rev.rend());
            p.complete = false;
            p.residual_hi = y;
            throw PartitionOverflow("gauge partition exceeded " + std::to_string(max_cells) + " cells; (" +
                                        std::to_string(a) + ", " + std::to_string(y) + "] left uncovered",
                                    std::move(p));
        }
        double x = std::max(a, g.left_end(y));
        if (!(x < y)) throw StructureError("gauge cell collapsed at y=" + std::to_string(y));
        rev.push_back({x, y, y});
        y = x;
    }
    LeftPartition p;
    p.a = a;
    p.b = b;
    p.cells.assign(rev.rbegin(), rev.rend());
    return p;
}

LeftPartition retag(const LeftPartition& p, const std::function<double(double, double)>& pick) {
    LeftPartition q = p;
    for (LeftCell& c : q.cells) c.tag = pick(c.x, c.y);
    q.validate();
    return q;
}

namespace {

// g(x+), with g(b+) := g(b) at the right end of g's interval
double right_value(const RegulatedFn& g, double x) {
    if (x == g.domain().hi) return g.value(x);
    Limits l = g.limits(x);
    if (!l.right) throw LimitError("multiplier has no right limit at " + std::to_string(x));
    return *l.right;
}

Rat right_value_exact(const PiecewisePoly& p, const Rat& x) {
    if (x == p.hi()) return p(x);
    return *p.right_limit(x);
}

void need_in(const RegulatedFn& f, double x) {
    if (!f.domain().contains(x)) throw DomainError("point " + std::to_string(x) + " outside " + f.domain().str());
}

} // namespace

double mu_interval(const RegulatedFn& g, double x, double y) {
    if (!(x < y)) throw DomainError("mu needs x < y");
    need_in(g, x);
    need_in(g, y);
    if (auto p = g.to_poly()) return mu_interval_exact(g, Rat::from_double(x), Rat::from_double(y)).to_double();
    return right_value(g, y) - right_value(g, x);
}

Rat mu_interval_exact(const RegulatedFn& g, const Rat& x, const Rat& y) {
    auto p = g.to_poly();
    if (!p) throw UnsupportedError("exact measure needs exact multiplier data");
    if (!(x < y)) throw DomainError("mu needs x < y");
    if (x < p->lo() || y > p->hi()) throw DomainError("interval outside the multiplier's domain");
    return right_value_exact(*p, y) - right_value_exact(*p, x);
}

Variation variation(const RegulatedFn& g, double a, double b) {
    if (!(a < b)) throw DomainError("variation needs a < b");
    need_in(g, a);
    need_in(g, b);
    Variation v;
    if (auto p0 = g.to_poly()) {
        PiecewisePoly p = p0->restrict(Rat::from_double(a), Rat::from_double(b));
        if (p.is_step()) {
            v.exact = p.to_step().variation();
            v.value = v.exact->to_double();
            v.certified = true;
            return v;
        }
        double acc = std::fabs(p.poly(0)(p.lo().to_double()) - p.base_value().to_double());
        for (size_t i = 0; i < p.size(); ++i) {
            double l = p.left(i).to_double(), e = p.end(i).to_double();
            std::vector<double> c;
            for (auto& r : p.poly(i).derivative().c) c.push_back(r.to_double());
            std::vector<double> pts{l};
            for (double x : real_roots(c, l, e)) pts.push_back(x);
            pts.push_back(e);
            for (size_t k = 0; k + 1 < pts.size(); ++k) acc += std::fabs(p.poly(i)(pts[k + 1]) - p.poly(i)(pts[k]));
            if (i + 1 < p.size()) acc += std::fabs(p.poly(i + 1)(e) - p.poly(i)(e));
        }
        v.value = acc;
        v.certified = true;
        return v;
    }
    if (const SampledFn* s = g.as_sampled()) {
        // piecewise linear between nodes plus jumps at break nodes
        const Grid& G = *s->grid;
        double acc = 0;
        double prev = g.value(a);
        size_t k = G.locate(a);
        if (a == G.t[k] && k + 1 < G.size()) {
            acc += std::fabs(s->right[k] - prev);
            prev = s->right[k];
        }
        for (size_t j = k + 1; j < G.size() && G.t[j] <= b; ++j) {
            acc += std::fabs(s->val[j] - prev);
            prev = s->val[j];
            if (G.t[j] < b) {
                acc += std::fabs(s->right[j] - prev);
                prev = s->right[j];
            }
        }
        acc += std::fabs(g.value(b) - prev);
        v.value = acc;
        v.certified = true;
        return v;
    }
    throw VariationError("variation of " + g.describe() + " is not computable; supply it");
}

namespace {

StieltjesResult exact_path(const PiecewisePoly& PF, const PiecewisePoly& PG, const Rat& a, const Rat& b) {
    PiecewisePoly F = PF.restrict(a, b);
    PiecewisePoly G = PG.restrict(a, b);
    StieltjesResult r;
    Rat acc(0);
    // absolutely continuous part
    PiecewisePoly dG = G.derivative();
    acc += (F * dG).integral(a, b);
    // atoms of mu_g at jumps of g in (a, b]: F(p) (g(p+) - g(p)); right limits
    // come from the unrestricted g so that a jump at b counts
    auto atom = [&](const Rat& p) {
        Rat gp = PG(p);
        Rat gr = p == PG.hi() ? gp : *PG.right_limit(p);
        if (gr != gp) acc += F(p) * (gr - gp);
    };
    for (size_t i = 0; i < G.size(); ++i) atom(G.end(i));
    // a jump of g exactly at a+ is excluded: mu starts at g(a+)
    r.exact = acc;
    r.value = acc.to_double();
    r.certified = true;
    r.cells = F.size();
    return r;
}

} // namespace

StieltjesResult stieltjes_exact(const RegulatedFn& F, const RegulatedFn& g, const Rat& a, const Rat& b) {
    auto pf = F.to_poly();
    auto pg = g.to_poly();
    if (!pf || !pg) throw UnsupportedError("exact Stieltjes integral needs exact F and g");
    if (a == b) return StieltjesResult{0, 0, Rat(0), true, 0, 0};
    if (b < a) {
        StieltjesResult r = stieltjes_exact(F, g, b, a);
        r.value = -r.value;
        r.exact = -*r.exact;
        return r;
    }
    if (a < pf->lo() || b > pf->hi() || a < pg->lo() || b > pg->hi())
        throw DomainError("interval outside the domain of F or g");
    return exact_path(*pf, *pg, a, b);
}

StieltjesResult stieltjes(const RegulatedFn& F, const RegulatedFn& g, double a, double b, double tol,
                          std::optional<double> vg) {
    if (!(a < b)) {
        if (a == b) return StieltjesResult{0, 0, Rat(0), true, 0, 0};
        StieltjesResult r = stieltjes(F, g, b, a, tol, vg);
        r.value = -r.value;
        if (r.exact) r.exact = -*r.exact;
        return r;
    }
    need_in(F, a);
    need_in(F, b);
    need_in(g, a);
    need_in(g, b);
    auto pf = F.to_poly();
    auto pg = g.to_poly();
    if (pf && pg) return exact_path(*pf, *pg, Rat::from_double(a), Rat::from_double(b));

    StieltjesResult r;
    if (pf && pf->is_step()) {
        StepFn s = pf->restrict(Rat::from_double(a), Rat::from_double(b)).to_step();
        for (size_t i = 0; i < s.size(); ++i)
            r.value += s.val(i).to_double() * mu_interval(g, s.left(i).to_double(), s.end(i).to_double());
        r.cells = s.size();
        r.certified = false;   // g limits from branch evaluation
        return r;
    }
    double V = vg ? *vg : variation(g, a, b).value;
    if (!std::isfinite(V) || V < 0) throw VariationError("multiplier variation must be finite");
    if (!(tol > 0)) throw ConfigError("tolerance must be positive");
    int n = V == 0 ? 1 : int(std::min(4096.0, std::ceil(V / tol)));
    StepApprox sa = step_approximation(F, n, Interval::closed(a, b));
    const NumStep& st = sa.step;
    for (size_t i = 0; i < st.size(); ++i) r.value += st.vals[i] * mu_interval(g, st.left(i), st.ends[i]);
    r.level = n;
    r.cells = st.size();
    r.error = V / double(n);
    if (sa.residual_cells > 0) {
        // on residual cells only |F| is controlled
        Iv e = F.enclose(a, b);
        r.error += e.bounded() ? 2 * e.mag() * V : INFINITY;
    }
    r.certified = sa.certified && r.error <= tol;
    return r;
}

StieltjesResult stieltjes_sum(const RegulatedFn& F, const RegulatedFn& g, const LeftPartition& P) {
    P.validate();
    if (!P.complete) throw StructureError("tagged sum needs a complete partition");
    StieltjesResult r;
    r.cells = P.cells.size();
    auto pf = F.to_poly();
    auto pg = g.to_poly();
    if (pf && pg) {
        Rat acc(0);
        Rat prev = right_value_exact(*pg, Rat::from_double(P.cells.front().x));
        for (const LeftCell& c : P.cells) {
            Rat y = Rat::from_double(c.y);
            Rat gy = right_value_exact(*pg, y);
            acc += (*pf)(Rat::from_double(c.tag)) * (gy - prev);
            prev = gy;
        }
        r.exact = acc;
        r.value = acc.to_double();
        r.certified = true;
        return r;
    }
    double prev = right_value(g, P.cells.front().x);
    for (const LeftCell& c : P.cells) {
        double gy = right_value(g, c.y);
        r.value += F.value(c.tag) * (gy - prev);
        prev = gy;
    }
    return r;
}

} // namespace lrp
