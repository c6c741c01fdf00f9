#include "lrp/step_fn.hpp"
#include "lrp/error.hpp"

#include <algorithm>

namespace lrp {

StepFn::StepFn(Rat a, Rat base_value, const std::vector<StepPiece>& pieces)
    : a_(std::move(a)), base_(std::move(base_value)) {
    if (pieces.empty()) throw StructureError("step function needs at least one cell");
    Rat cur = a_;
    for (const auto& p : pieces) {
        if (p.x != cur) throw StructureError("step cells must be contiguous from the base point");
        if (!(p.x < p.y)) throw StructureError("step cell with empty interval");
        ends_.push_back(p.y);
        vals_.push_back(p.v);
        cur = p.y;
    }
    canonicalize();
}

StepFn::StepFn(Rat a, Rat base_value, std::vector<Rat> ends, std::vector<Rat> vals)
    : a_(std::move(a)), base_(std::move(base_value)), ends_(std::move(ends)), vals_(std::move(vals)) {
    if (ends_.empty() || ends_.size() != vals_.size()) throw StructureError("bad step cell arrays");
    Rat cur = a_;
    for (const auto& e : ends_) {
        if (!(cur < e)) throw StructureError("step cell ends must increase");
        cur = e;
    }
    canonicalize();
}

StepFn::StepFn(Rat a, Rat b, Rat v) : a_(std::move(a)), base_(v) {
    if (!(a_ < b)) throw StructureError("constant step needs a < b");
    ends_.push_back(std::move(b));
    vals_.push_back(std::move(v));
    canonicalize();
}

StepFn StepFn::indicator(const Rat& a, const Rat& b, const Rat& x, const Rat& y) {
    std::vector<Rat> e, v;
    Rat xl = max(a, x), yr = min(b, y);
    if (xl >= yr) return StepFn(a, b, Rat(0));
    if (a < xl) { e.push_back(xl); v.push_back(0); }
    e.push_back(yr); v.push_back(1);
    if (yr < b) { e.push_back(b); v.push_back(0); }
    return StepFn(a, Rat(0), e, v);
}

void StepFn::canonicalize() {
    std::vector<Rat> e, v;
    e.reserve(ends_.size());
    v.reserve(vals_.size());
    for (size_t i = 0; i < ends_.size(); ++i) {
        if (!v.empty() && v.back() == vals_[i]) e.back() = ends_[i];
        else { e.push_back(ends_[i]); v.push_back(vals_[i]); }
    }
    ends_ = std::move(e);
    vals_ = std::move(v);
    ends_d_.resize(ends_.size());
    for (size_t i = 0; i < ends_.size(); ++i) ends_d_[i] = ends_[i].to_double();
}

std::vector<StepPiece> StepFn::pieces() const {
    std::vector<StepPiece> out;
    for (size_t i = 0; i < size(); ++i) out.push_back({left(i), ends_[i], vals_[i]});
    return out;
}

size_t StepFn::cell_of(const Rat& t) const {
    if (!(a_ < t) || t > hi()) throw DomainError("point outside step cells");
    auto it = std::lower_bound(ends_.begin(), ends_.end(), t);
    return size_t(it - ends_.begin());
}

Rat StepFn::operator()(const Rat& t) const {
    if (t == a_) return base_;
    return vals_[cell_of(t)];
}

double StepFn::operator()(double t) const {
    double a = a_.to_double();
    if (t < a || t > ends_d_.back()) throw DomainError("point outside step domain");
    auto it = std::lower_bound(ends_d_.begin(), ends_d_.end(), t);
    size_t i = size_t(it - ends_d_.begin());
    // resolve rounding ties exactly
    bool tie = (i < ends_d_.size() && ends_d_[i] == t) || (i > 0 && ends_d_[i - 1] == t) || t == a;
    if (tie) return (*this)(Rat::from_double(t)).to_double();
    return vals_[i].to_double();
}

Rat StepFn::left_limit(const Rat& t) const {
    if (t == a_) return base_;
    return vals_[cell_of(t)];
}

std::optional<Rat> StepFn::right_limit(const Rat& t) const {
    if (t < a_ || t > hi()) throw DomainError("point outside step domain");
    if (t == hi()) return std::nullopt;
    auto it = std::upper_bound(ends_.begin(), ends_.end(), t);
    return vals_[size_t(it - ends_.begin())];
}

double StepFn::right_limit_d(double t) const {
    auto r = right_limit(Rat::from_double(t));
    return r ? r->to_double() : (*this)(t);
}

Rat StepFn::sup_norm() const {
    Rat m = abs(base_);
    for (const auto& v : vals_) m = max(m, abs(v));
    return m;
}

Rat StepFn::l1_norm() const {
    Rat s(0);
    for (size_t i = 0; i < size(); ++i) s += abs(vals_[i]) * (ends_[i] - left(i));
    return s;
}

std::pair<Rat, Rat> StepFn::cumulative_extrema() const {
    Rat phi(0), mx(0), mn(0);
    for (size_t i = 0; i < size(); ++i) {
        phi += vals_[i] * (ends_[i] - left(i));
        mx = max(mx, phi);
        mn = min(mn, phi);
    }
    return {mx, mn};
}

Rat StepFn::alexiewicz_norm() const {
    auto [mx, mn] = cumulative_extrema();
    return mx - mn;
}

Rat StepFn::cumulative(const Rat& t) const {
    if (t < a_ || t > hi()) throw DomainError("point outside step domain");
    Rat s(0);
    for (size_t i = 0; i < size(); ++i) {
        const Rat& l = left(i);
        if (t <= l) break;
        s += vals_[i] * (min(t, ends_[i]) - l);
    }
    return s;
}

Rat StepFn::integral(const Rat& x, const Rat& y) const { return cumulative(y) - cumulative(x); }

Rat StepFn::variation() const {
    Rat v = abs(vals_[0] - base_);
    for (size_t i = 1; i < size(); ++i) v += abs(vals_[i] - vals_[i - 1]);
    return v;
}

Rat StepFn::min_value() const {
    Rat m = base_;
    for (const auto& v : vals_) m = min(m, v);
    return m;
}

Rat StepFn::max_value() const {
    Rat m = base_;
    for (const auto& v : vals_) m = max(m, v);
    return m;
}

StepFn StepFn::map(const std::function<Rat(const Rat&)>& fn) const {
    std::vector<Rat> v;
    v.reserve(size());
    for (const auto& x : vals_) v.push_back(fn(x));
    return StepFn(a_, fn(base_), ends_, std::move(v));
}

StepFn StepFn::combine(const StepFn& f, const StepFn& g,
                       const std::function<Rat(const Rat&, const Rat&)>& fn) {
    if (f.lo() != g.lo() || f.hi() != g.hi()) throw DomainError("step functions on different intervals");
    std::vector<Rat> e, v;
    size_t i = 0, j = 0;
    while (i < f.size() && j < g.size()) {
        const Rat& fe = f.ends_[i];
        const Rat& ge = g.ends_[j];
        v.push_back(fn(f.vals_[i], g.vals_[j]));
        if (fe < ge) { e.push_back(fe); ++i; }
        else if (ge < fe) { e.push_back(ge); ++j; }
        else { e.push_back(fe); ++i; ++j; }
    }
    return StepFn(f.a_, fn(f.base_, g.base_), std::move(e), std::move(v));
}

StepFn StepFn::restrict(const Rat& x, const Rat& y) const {
    if (x < a_ || y > hi() || !(x < y)) throw DomainError("bad restriction interval");
    std::vector<Rat> e, v;
    for (size_t i = 0; i < size(); ++i) {
        if (ends_[i] <= x) continue;
        if (left(i) >= y) break;
        e.push_back(min(ends_[i], y));
        v.push_back(vals_[i]);
    }
    return StepFn(x, (*this)(x), std::move(e), std::move(v));
}

bool StepFn::leq(const StepFn& g) const {
    bool ok = true;
    combine(*this, g, [&](const Rat& p, const Rat& q) {
        if (p > q) ok = false;
        return Rat(0);
    });
    return ok;
}

bool operator==(const StepFn& f, const StepFn& g) {
    return f.a_ == g.a_ && f.base_ == g.base_ && f.ends_ == g.ends_ && f.vals_ == g.vals_;
}

StepFn operator+(const StepFn& f, const StepFn& g) {
    return StepFn::combine(f, g, [](const Rat& p, const Rat& q) { return p + q; });
}
StepFn operator-(const StepFn& f, const StepFn& g) {
    return StepFn::combine(f, g, [](const Rat& p, const Rat& q) { return p - q; });
}
StepFn operator*(const StepFn& f, const StepFn& g) {
    return StepFn::combine(f, g, [](const Rat& p, const Rat& q) { return p * q; });
}
StepFn operator*(const Rat& c, const StepFn& f) {
    return f.map([&](const Rat& v) { return c * v; });
}
StepFn StepFn::operator-() const {
    return map([](const Rat& v) { return -v; });
}

StepFn join(const StepFn& f, const StepFn& g) {
    return StepFn::combine(f, g, [](const Rat& p, const Rat& q) { return max(p, q); });
}
StepFn meet(const StepFn& f, const StepFn& g) {
    return StepFn::combine(f, g, [](const Rat& p, const Rat& q) { return min(p, q); });
}
StepFn abs(const StepFn& f) {
    return f.map([](const Rat& v) { return abs(v); });
}
StepFn pos(const StepFn& f) {
    return f.map([](const Rat& v) { return max(v, Rat(0)); });
}
StepFn neg(const StepFn& f) {
    return f.map([](const Rat& v) { return max(-v, Rat(0)); });
}

} // namespace lrp
