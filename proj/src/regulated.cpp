#include "lrp/regulated.hpp"
#include "lrp/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <variant>

namespace lrp {

struct PointwiseData {
    RegulatedFn::PwOp op;
    std::vector<RegulatedFn> args;
};

using LinCombData = std::vector<std::pair<double, RegulatedFn>>;
using ProductData = std::pair<RegulatedFn, RegulatedFn>;

struct RegulatedFn::Impl {
    std::variant<StepFn, PiecewisePoly, SymbolicFn, LinCombData, ProductData, PointwiseData, SampledFn> data;
    Interval domain;
    std::string label;
};

namespace {

Interval step_domain(const Rat& a, const Rat& b) { return Interval::closed(a.to_double(), b.to_double()); }

void require_in(const Interval& d, double t) {
    if (!d.contains(t)) throw DomainError("point " + std::to_string(t) + " outside domain " + d.str());
}

Interval common_domain(const RegulatedFn& f, const RegulatedFn& g) {
    const Interval& a = f.domain();
    const Interval& b = g.domain();
    if (!(a == b)) throw DomainError("functions live on different intervals: " + a.str() + " vs " + b.str());
    return a;
}

Iv poly_enclose(const Poly& p, Iv x) {
    Iv r(0.0);
    for (size_t i = p.c.size(); i-- > 0;) r = r * x + Iv(p.c[i].to_double());
    return r;
}

Val val_max(const Val& a, const Val& b) {
    if (a.finite() && b.finite()) return Val::fin(std::max(a.v, b.v), 0, a.dir_known && b.dir_known);
    if (a.k == Val::K::Undef || b.k == Val::K::Undef) return Val::undef();
    auto rng = [](const Val& v) -> Iv {
        if (v.k == Val::K::Fin) return Iv(v.v);
        if (v.k == Val::K::Bnd) return Iv(v.lo, v.hi);
        if (v.k == Val::K::PInf) return Iv(INFINITY);
        return Iv(-INFINITY);
    };
    Iv r = imax(rng(a), rng(b));
    if (r.lo == INFINITY) return Val::pinf();
    if (r.hi == -INFINITY) return Val::ninf();
    if (!r.bounded()) return Val::undef();
    return Val::bnd(r.lo, r.hi);
}

double sym_value(const SymbolicFn& s, double t) {
    const Interval& d = s.domain;
    if (t == d.lo) {
        Val r = sym::eval_side(s.expr, t, Side::Right);
        if (r.finite()) return r.v;
        if (auto v = sym::eval_fast(s.expr, t)) return *v;
        Val l = sym::eval_side(s.expr, t, Side::Left);
        if (l.finite()) return l.v;
        throw DomainError("value undefined at domain minimum for " + s.name);
    }
    if (auto v = sym::eval_fast(s.expr, t)) return *v;
    Val l = sym::eval_side(s.expr, t, Side::Left);
    if (l.finite()) return l.v;
    Val e = sym::eval_side(s.expr, t, Side::Exact);
    if (e.finite()) return e.v;
    throw DomainError("value undefined at t=" + std::to_string(t) + " for " + s.name);
}

double sampled_value(const SampledFn& s, double t) {
    const Grid& g = *s.grid;
    size_t k = g.locate(t);
    if (t == g.t[0]) return s.val[0];
    if (t == g.t[k + 1]) return s.val[k + 1];
    double w = (t - g.t[k]) / (g.t[k + 1] - g.t[k]);
    return s.right[k] + (s.val[k + 1] - s.right[k]) * w;
}

std::recursive_mutex& reg_mutex() {
    static std::recursive_mutex m;
    return m;
}

std::map<std::string, RegistryEntry>& registry() {
    static std::map<std::string, RegistryEntry> r = [] {
        using namespace sym;
        std::map<std::string, RegistryEntry> m;
        // (1/t) sin(1/t) + cos(1/t) + 1  has primitive  t (1 + cos(1/t))
        m["osc2_shape_a"] = RegistryEntry{
            "osc2_shape_a",
            [](int) { Expr u = recip(t()); return u * sin(u) + cos(u) + Expr(1.0); },
            [](int) { return t() * (Expr(1.0) + cos(recip(t()))); }};
        // (1/t) cos(1/t) - sin(1/t) + 1  has primitive  t (1 - sin(1/t))
        m["osc2_shape_b"] = RegistryEntry{
            "osc2_shape_b",
            [](int) { Expr u = recip(t()); return u * cos(u) - sin(u) + Expr(1.0); },
            [](int) { return t() * (Expr(1.0) - sin(recip(t()))); }};
        return m;
    }();
    return r;
}

} // namespace

const RegistryEntry* registry_lookup(const std::string& key) {
    std::lock_guard lk(reg_mutex());
    auto& r = registry();
    auto it = r.find(key);
    return it == r.end() ? nullptr : &it->second;
}

void registry_add(RegistryEntry e) {
    std::lock_guard lk(reg_mutex());
    std::string k = e.key;
    registry()[k] = std::move(e);
}

std::vector<std::string> registry_keys() {
    std::lock_guard lk(reg_mutex());
    std::vector<std::string> out;
    for (auto& [k, v] : registry()) out.push_back(k);
    return out;
}

RegulatedFn::RegulatedFn() : RegulatedFn(step(StepFn(Rat(0), Rat(1), Rat(0)))) {}

RegulatedFn RegulatedFn::step(StepFn s) {
    auto p = std::make_shared<Impl>();
    p->domain = step_domain(s.lo(), s.hi());
    p->data = std::move(s);
    return RegulatedFn(p);
}

RegulatedFn RegulatedFn::poly(PiecewisePoly pp) {
    auto p = std::make_shared<Impl>();
    p->domain = step_domain(pp.lo(), pp.hi());
    p->data = std::move(pp);
    return RegulatedFn(p);
}

RegulatedFn RegulatedFn::symbolic(sym::Expr e, Interval dom, std::string name, std::string key, int m) {
    auto p = std::make_shared<Impl>();
    p->domain = dom;
    p->data = SymbolicFn{std::move(e), dom, std::move(name), std::move(key), m};
    return RegulatedFn(p);
}

RegulatedFn RegulatedFn::lincomb(std::vector<std::pair<double, RegulatedFn>> terms) {
    if (terms.empty()) throw StructureError("empty linear combination");
    auto p = std::make_shared<Impl>();
    p->domain = terms[0].second.domain();
    for (auto& [c, f] : terms) common_domain(terms[0].second, f);
    p->data = std::move(terms);
    return RegulatedFn(p);
}

RegulatedFn RegulatedFn::product(RegulatedFn f, RegulatedFn g) {
    auto p = std::make_shared<Impl>();
    p->domain = common_domain(f, g);
    p->data = ProductData{std::move(f), std::move(g)};
    return RegulatedFn(p);
}

RegulatedFn RegulatedFn::pointwise(PwOp op, RegulatedFn f, std::optional<RegulatedFn> g) {
    auto p = std::make_shared<Impl>();
    p->domain = f.domain();
    PointwiseData d{op, {f}};
    if (op != PwOp::Abs) {
        if (!g) throw StructureError("binary lattice operation needs two operands");
        common_domain(f, *g);
        d.args.push_back(*g);
    }
    p->data = std::move(d);
    return RegulatedFn(p);
}

RegulatedFn RegulatedFn::sampled(GridP grid, std::vector<double> val, std::vector<double> right) {
    if (!grid || val.size() != grid->size() || right.size() != grid->size())
        throw StructureError("sampled function arrays do not match the grid");
    auto p = std::make_shared<Impl>();
    p->domain = Interval::closed(grid->lo(), grid->hi());
    p->data = SampledFn{std::move(grid), std::move(val), std::move(right)};
    return RegulatedFn(p);
}

RegulatedFn RegulatedFn::constant(double c, Interval dom) {
    if (dom.bounded())
        return step(StepFn(Rat::from_double(dom.lo), Rat::from_double(dom.hi), Rat::from_double(c)));
    return symbolic(sym::Expr(c), dom, "const");
}

RegulatedFn::Kind RegulatedFn::kind() const { return Kind(p_->data.index()); }
const Interval& RegulatedFn::domain() const { return p_->domain; }
const std::string& RegulatedFn::label() const { return p_->label; }

RegulatedFn RegulatedFn::with_label(std::string l) const {
    auto p = std::make_shared<Impl>(*p_);
    p->label = std::move(l);
    return RegulatedFn(p);
}

const StepFn* RegulatedFn::as_step() const { return std::get_if<StepFn>(&p_->data); }
const PiecewisePoly* RegulatedFn::as_poly() const { return std::get_if<PiecewisePoly>(&p_->data); }
const SymbolicFn* RegulatedFn::as_symbolic() const { return std::get_if<SymbolicFn>(&p_->data); }
const SampledFn* RegulatedFn::as_sampled() const { return std::get_if<SampledFn>(&p_->data); }
const LinCombData* RegulatedFn::as_lincomb() const { return std::get_if<LinCombData>(&p_->data); }
const ProductData* RegulatedFn::as_product() const { return std::get_if<ProductData>(&p_->data); }
RegulatedFn::PwOp RegulatedFn::pointwise_op() const { return std::get<PointwiseData>(p_->data).op; }
const std::vector<RegulatedFn>& RegulatedFn::pointwise_args() const { return std::get<PointwiseData>(p_->data).args; }

std::string RegulatedFn::describe() const {
    switch (kind()) {
    case Kind::Step: return "step(" + std::to_string(as_step()->size()) + " cells)";
    case Kind::Poly: return "piecewise-poly(" + std::to_string(as_poly()->size()) + " cells)";
    case Kind::Symbolic: {
        auto* s = as_symbolic();
        return s->name.empty() ? sym::to_string(s->expr) : s->name;
    }
    case Kind::LinComb: {
        std::string out;
        for (auto& [c, f] : *as_lincomb()) {
            if (!out.empty()) out += " + ";
            out += std::to_string(c) + "*" + f.describe();
        }
        return out;
    }
    case Kind::Product: return "(" + as_product()->first.describe() + ")*(" + as_product()->second.describe() + ")";
    case Kind::Pointwise: {
        auto& a = pointwise_args();
        const char* nm = pointwise_op() == PwOp::Max ? "max" : pointwise_op() == PwOp::Min ? "min" : "abs";
        std::string out = std::string(nm) + "(" + a[0].describe();
        if (a.size() > 1) out += ", " + a[1].describe();
        return out + ")";
    }
    case Kind::Sampled: return "sampled(" + std::to_string(as_sampled()->grid->size()) + " nodes)";
    }
    return "?";
}

double RegulatedFn::value(double t) const {
    require_in(domain(), t);
    switch (kind()) {
    case Kind::Step: return (*as_step())(t);
    case Kind::Poly: return (*as_poly())(t);
    case Kind::Symbolic: return sym_value(*as_symbolic(), t);
    case Kind::LinComb: {
        double s = 0;
        for (auto& [c, f] : *as_lincomb()) s += c * f.value(t);
        return s;
    }
    case Kind::Product: return as_product()->first.value(t) * as_product()->second.value(t);
    case Kind::Pointwise: {
        auto& a = pointwise_args();
        double x = a[0].value(t);
        switch (pointwise_op()) {
        case PwOp::Abs: return std::fabs(x);
        case PwOp::Max: return std::max(x, a[1].value(t));
        case PwOp::Min: return std::min(x, a[1].value(t));
        }
        return x;
    }
    case Kind::Sampled: return sampled_value(*as_sampled(), t);
    }
    return 0;
}

Val RegulatedFn::side_value(double t, Side side) const {
    require_in(domain(), t);
    const Interval& d = domain();
    if (side == Side::Left && t == d.lo) return Val::undef();
    if (side == Side::Right && t == d.hi) return Val::undef();
    switch (kind()) {
    case Kind::Step: {
        Rat r = Rat::from_double(t);
        const StepFn& s = *as_step();
        if (side == Side::Left) return Val::fin(s.left_limit(r).to_double());
        if (side == Side::Right) return Val::fin(s.right_limit(r)->to_double());
        return Val::fin(s(r).to_double());
    }
    case Kind::Poly: {
        Rat r = Rat::from_double(t);
        const PiecewisePoly& s = *as_poly();
        if (side == Side::Right) return Val::fin(s.right_limit(r)->to_double());
        return Val::fin(s(r).to_double());
    }
    case Kind::Symbolic: return sym::eval_side(as_symbolic()->expr, t, side);
    case Kind::LinComb: {
        Val s = Val::fin(0);
        for (auto& [c, f] : *as_lincomb()) s = s + Val::fin(c) * f.side_value(t, side);
        return s;
    }
    case Kind::Product: return as_product()->first.side_value(t, side) * as_product()->second.side_value(t, side);
    case Kind::Pointwise: {
        auto& a = pointwise_args();
        Val x = a[0].side_value(t, side);
        switch (pointwise_op()) {
        case PwOp::Abs: return val_max(x, -x);
        case PwOp::Max: return val_max(x, a[1].side_value(t, side));
        case PwOp::Min: return -val_max(-x, -a[1].side_value(t, side));
        }
        return x;
    }
    case Kind::Sampled: {
        const SampledFn& s = *as_sampled();
        size_t j = s.grid->node_index(t);
        if (j != Grid::npos) return Val::fin(side == Side::Right ? s.right[j] : s.val[j]);
        return Val::fin(sampled_value(s, t));
    }
    }
    return Val::undef();
}

Limits RegulatedFn::limits(double t) const {
    require_in(domain(), t);
    Limits L;
    L.value = value(t);
    if (t > domain().lo) {
        Val l = side_value(t, Side::Left);
        if (l.finite()) L.left = l.v;
        else throw LimitError("left limit does not exist at t=" + std::to_string(t));
    }
    if (t < domain().hi) {
        Val r = side_value(t, Side::Right);
        if (r.finite()) L.right = r.v;
    }
    return L;
}

Iv RegulatedFn::enclose(double lo, double hi) const {
    switch (kind()) {
    case Kind::Step: {
        const StepFn& s = *as_step();
        Iv r(NAN, NAN);
        bool any = false;
        for (size_t i = 0; i < s.size(); ++i) {
            double l = s.left(i).to_double(), e = s.end(i).to_double();
            if (l < hi && e > lo) {
                double v = s.val(i).to_double();
                r = any ? hull(r, Iv(v)) : Iv(v);
                any = true;
            }
            if (l >= hi) break;
        }
        if (!any) r = Iv(value(std::clamp(hi, domain().lo, domain().hi)));
        return r;
    }
    case Kind::Poly: {
        const PiecewisePoly& s = *as_poly();
        Iv r;
        bool any = false;
        for (size_t i = 0; i < s.size(); ++i) {
            double l = s.left(i).to_double(), e = s.end(i).to_double();
            if (l < hi && e > lo) {
                Iv c = poly_enclose(s.poly(i), Iv(std::max(l, lo), std::min(e, hi)));
                r = any ? hull(r, c) : c;
                any = true;
            }
            if (l >= hi) break;
        }
        if (!any) r = Iv(value(std::clamp(hi, domain().lo, domain().hi)));
        return r;
    }
    case Kind::Symbolic: return sym::enclose(as_symbolic()->expr, lo, hi);
    case Kind::LinComb: {
        Iv s(0.0);
        for (auto& [c, f] : *as_lincomb()) s = s + Iv(c) * f.enclose(lo, hi);
        return s;
    }
    case Kind::Product: return as_product()->first.enclose(lo, hi) * as_product()->second.enclose(lo, hi);
    case Kind::Pointwise: {
        auto& a = pointwise_args();
        Iv x = a[0].enclose(lo, hi);
        switch (pointwise_op()) {
        case PwOp::Abs: return iabs(x);
        case PwOp::Max: return imax(x, a[1].enclose(lo, hi));
        case PwOp::Min: return imin(x, a[1].enclose(lo, hi));
        }
        return x;
    }
    case Kind::Sampled: {
        const SampledFn& s = *as_sampled();
        const Grid& g = *s.grid;
        double l = std::max(lo, g.lo()), h = std::min(hi, g.hi());
        size_t jl = g.node_index(l);
        Iv r(jl != Grid::npos ? s.right[jl] : sampled_value(s, l));
        r = hull(r, Iv(sampled_value(s, h)));
        auto it = std::upper_bound(g.t.begin(), g.t.end(), l);
        for (; it != g.t.end() && *it < h; ++it) {
            size_t j = size_t(it - g.t.begin());
            r = hull(r, Iv(s.val[j]));
            r = hull(r, Iv(s.right[j]));
        }
        return r;
    }
    }
    return Iv::entire();
}

std::vector<double> RegulatedFn::break_points(double lo, double hi) const {
    std::vector<double> out;
    auto add_all = [&](const std::vector<double>& v) { out.insert(out.end(), v.begin(), v.end()); };
    switch (kind()) {
    case Kind::Step: {
        const StepFn& s = *as_step();
        if (s.base_value() != s.val(0)) out.push_back(s.lo().to_double());
        for (size_t i = 0; i + 1 < s.size(); ++i) out.push_back(s.end(i).to_double());
        break;
    }
    case Kind::Poly:
        for (auto& r : as_poly()->jumps()) out.push_back(r.to_double());
        break;
    case Kind::Symbolic: add_all(sym::break_points(as_symbolic()->expr, lo, hi)); break;
    case Kind::LinComb:
        for (auto& [c, f] : *as_lincomb()) add_all(f.break_points(lo, hi));
        break;
    case Kind::Product:
        add_all(as_product()->first.break_points(lo, hi));
        add_all(as_product()->second.break_points(lo, hi));
        break;
    case Kind::Pointwise:
        for (auto& f : pointwise_args()) add_all(f.break_points(lo, hi));
        break;
    case Kind::Sampled: {
        const SampledFn& s = *as_sampled();
        for (size_t j = 0; j < s.grid->size(); ++j)
            if (s.grid->brk[j] || s.val[j] != s.right[j]) out.push_back(s.grid->t[j]);
        break;
    }
    }
    std::vector<double> r;
    for (double x : out)
        if (x >= lo && x <= hi) r.push_back(x);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

bool RegulatedFn::exact() const {
    switch (kind()) {
    case Kind::Step:
    case Kind::Poly: return true;
    case Kind::LinComb:
        for (auto& [c, f] : *as_lincomb())
            if (!f.exact()) return false;
        return true;
    case Kind::Product: return as_product()->first.exact() && as_product()->second.exact();
    default: return false;
    }
}

std::optional<PiecewisePoly> RegulatedFn::to_poly() const {
    switch (kind()) {
    case Kind::Step: return PiecewisePoly(*as_step());
    case Kind::Poly: return *as_poly();
    case Kind::LinComb: {
        std::optional<PiecewisePoly> acc;
        for (auto& [c, f] : *as_lincomb()) {
            auto p = f.to_poly();
            if (!p) return std::nullopt;
            PiecewisePoly term = Rat::from_double(c) * *p;
            acc = acc ? *acc + term : term;
        }
        return acc;
    }
    case Kind::Product: {
        auto a = as_product()->first.to_poly(), b = as_product()->second.to_poly();
        if (!a || !b) return std::nullopt;
        return *a * *b;
    }
    default: return std::nullopt;
    }
}

std::optional<RegulatedFn> RegulatedFn::closed_primitive() const {
    if (exact()) return poly(to_poly()->cumulative());
    switch (kind()) {
    case Kind::Symbolic: {
        const SymbolicFn& s = *as_symbolic();
        if (s.primitive_key.empty()) return std::nullopt;
        const RegistryEntry* e = registry_lookup(s.primitive_key);
        if (!e) return std::nullopt;
        return symbolic(e->primitive(s.m), s.domain, "primitive of " + s.name);
    }
    case Kind::LinComb: {
        std::vector<std::pair<double, RegulatedFn>> terms;
        for (auto& [c, f] : *as_lincomb()) {
            auto p = f.closed_primitive();
            if (!p) return std::nullopt;
            terms.emplace_back(c, *p);
        }
        return lincomb(std::move(terms));
    }
    default: return std::nullopt;
    }
}

bool identical(const RegulatedFn& f, const RegulatedFn& g) {
    if (f.p_ == g.p_) return true;
    if (f.kind() != g.kind() || !(f.domain() == g.domain())) return false;
    using Kind = RegulatedFn::Kind;
    switch (f.kind()) {
    case Kind::Step: return *f.as_step() == *g.as_step();
    case Kind::Poly: return *f.as_poly() == *g.as_poly();
    case Kind::Symbolic: return sym::same(f.as_symbolic()->expr, g.as_symbolic()->expr);
    case Kind::LinComb: {
        auto& a = *f.as_lincomb();
        auto& b = *g.as_lincomb();
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[i].first == b[i].first) || !identical(a[i].second, b[i].second)) return false;
        return true;
    }
    case Kind::Product:
        return identical(f.as_product()->first, g.as_product()->first) &&
               identical(f.as_product()->second, g.as_product()->second);
    case Kind::Pointwise: {
        if (f.pointwise_op() != g.pointwise_op()) return false;
        auto& a = f.pointwise_args();
        auto& b = g.pointwise_args();
        for (size_t i = 0; i < a.size(); ++i)
            if (!identical(a[i], b[i])) return false;
        return true;
    }
    case Kind::Sampled: {
        auto* a = f.as_sampled();
        auto* b = g.as_sampled();
        return (a->grid == b->grid || a->grid->t == b->grid->t) && a->val == b->val && a->right == b->right;
    }
    }
    return false;
}

RegulatedFn operator+(const RegulatedFn& f, const RegulatedFn& g) {
    if (f.as_step() && g.as_step()) return RegulatedFn::step(*f.as_step() + *g.as_step());
    return RegulatedFn::lincomb({{1.0, f}, {1.0, g}});
}

RegulatedFn operator-(const RegulatedFn& f, const RegulatedFn& g) {
    if (f.as_step() && g.as_step()) return RegulatedFn::step(*f.as_step() - *g.as_step());
    return RegulatedFn::lincomb({{1.0, f}, {-1.0, g}});
}

RegulatedFn operator*(double c, const RegulatedFn& f) {
    if (f.as_step()) return RegulatedFn::step(Rat::from_double(c) * *f.as_step());
    return RegulatedFn::lincomb({{c, f}});
}

RegulatedFn sample(const RegulatedFn& f, const GridP& grid) {
    if (const SampledFn* s = f.as_sampled(); s && s->grid == grid) return f;
    std::vector<double> val(grid->size()), right(grid->size());
    auto bps = f.break_points(grid->lo(), grid->hi());
    for (size_t k = 0; k < grid->size(); ++k) {
        double t = grid->t[k];
        val[k] = f.value(t);
        right[k] = val[k];
        bool is_break = grid->brk[k] || std::binary_search(bps.begin(), bps.end(), t);
        if (is_break && k + 1 < grid->size()) {
            Val r = f.side_value(t, Side::Right);
            if (r.finite()) right[k] = r.v;
        }
    }
    return RegulatedFn::sampled(grid, std::move(val), std::move(right));
}

} // namespace lrp
