#include "lrp/piecewise_poly.hpp"
#include "lrp/error.hpp"

#include <algorithm>

namespace lrp {

Poly Poly::monomial(const Rat& coef, int k) {
    std::vector<Rat> c(size_t(k) + 1, Rat(0));
    c[size_t(k)] = coef;
    return Poly(std::move(c));
}

void Poly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Rat Poly::operator()(const Rat& t) const {
    Rat r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * t + c[i];
    return r;
}

double Poly::operator()(double t) const {
    double r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * t + c[i].to_double();
    return r;
}

Poly Poly::antiderivative() const {
    std::vector<Rat> out(c.size() + 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / Rat(long(i + 1));
    return Poly(std::move(out));
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<Rat> out(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * Rat(long(i));
    return Poly(std::move(out));
}

Poly operator+(const Poly& p, const Poly& q) {
    std::vector<Rat> out(std::max(p.c.size(), q.c.size()), Rat(0));
    for (size_t i = 0; i < p.c.size(); ++i) out[i] += p.c[i];
    for (size_t i = 0; i < q.c.size(); ++i) out[i] += q.c[i];
    return Poly(std::move(out));
}

Poly operator-(const Poly& p, const Poly& q) { return p + Rat(-1) * q; }

Poly operator*(const Poly& p, const Poly& q) {
    if (p.c.empty() || q.c.empty()) return Poly();
    std::vector<Rat> out(p.c.size() + q.c.size() - 1, Rat(0));
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j < q.c.size(); ++j) out[i + j] += p.c[i] * q.c[j];
    return Poly(std::move(out));
}

Poly operator*(const Rat& s, const Poly& p) {
    std::vector<Rat> out = p.c;
    for (auto& x : out) x *= s;
    return Poly(std::move(out));
}

PiecewisePoly::PiecewisePoly(Rat a, Rat base_value, std::vector<Rat> ends, std::vector<Poly> polys)
    : a_(std::move(a)), base_(std::move(base_value)), ends_(std::move(ends)), polys_(std::move(polys)) {
    if (ends_.empty() || ends_.size() != polys_.size()) throw StructureError("bad piecewise polynomial arrays");
    Rat cur = a_;
    for (const auto& e : ends_) {
        if (!(cur < e)) throw StructureError("piecewise polynomial ends must increase");
        cur = e;
    }
    canonicalize();
}

PiecewisePoly::PiecewisePoly(Rat a, Rat b, Poly p) : a_(std::move(a)) {
    base_ = p(a_);
    ends_.push_back(std::move(b));
    polys_.push_back(std::move(p));
    if (!(a_ < ends_[0])) throw StructureError("piecewise polynomial needs a < b");
    canonicalize();
}

PiecewisePoly::PiecewisePoly(const StepFn& s) : a_(s.lo()), base_(s.base_value()) {
    for (size_t i = 0; i < s.size(); ++i) {
        ends_.push_back(s.end(i));
        polys_.push_back(Poly::constant(s.val(i)));
    }
    canonicalize();
}

void PiecewisePoly::canonicalize() {
    std::vector<Rat> e;
    std::vector<Poly> p;
    for (size_t i = 0; i < ends_.size(); ++i) {
        if (!p.empty() && p.back() == polys_[i]) e.back() = ends_[i];
        else { e.push_back(ends_[i]); p.push_back(polys_[i]); }
    }
    ends_ = std::move(e);
    polys_ = std::move(p);
    ends_d_.resize(ends_.size());
    for (size_t i = 0; i < ends_.size(); ++i) ends_d_[i] = ends_[i].to_double();
}

size_t PiecewisePoly::cell_of(const Rat& t) const {
    if (!(a_ < t) || t > hi()) throw DomainError("point outside piecewise polynomial cells");
    return size_t(std::lower_bound(ends_.begin(), ends_.end(), t) - ends_.begin());
}

Rat PiecewisePoly::operator()(const Rat& t) const {
    if (t == a_) return base_;
    return polys_[cell_of(t)](t);
}

double PiecewisePoly::operator()(double t) const {
    double a = a_.to_double();
    if (t < a || t > ends_d_.back()) throw DomainError("point outside piecewise polynomial domain");
    size_t i = size_t(std::lower_bound(ends_d_.begin(), ends_d_.end(), t) - ends_d_.begin());
    bool tie = (i < ends_d_.size() && ends_d_[i] == t) || (i > 0 && ends_d_[i - 1] == t) || t == a;
    if (tie) return (*this)(Rat::from_double(t)).to_double();
    return polys_[i](t);
}

std::optional<Rat> PiecewisePoly::right_limit(const Rat& t) const {
    if (t < a_ || t > hi()) throw DomainError("point outside piecewise polynomial domain");
    if (t == hi()) return std::nullopt;
    size_t i = size_t(std::upper_bound(ends_.begin(), ends_.end(), t) - ends_.begin());
    return polys_[i](t);
}

std::vector<Rat> PiecewisePoly::jumps() const {
    std::vector<Rat> out;
    if (polys_[0](a_) != base_) out.push_back(a_);
    for (size_t i = 0; i + 1 < size(); ++i)
        if (polys_[i](ends_[i]) != polys_[i + 1](ends_[i])) out.push_back(ends_[i]);
    return out;
}

PiecewisePoly PiecewisePoly::cumulative() const {
    std::vector<Poly> out;
    Rat acc(0);
    for (size_t i = 0; i < size(); ++i) {
        Poly P = polys_[i].antiderivative();
        Rat shift = acc - P(left(i));
        out.push_back(P + Poly::constant(shift));
        acc = out.back()(ends_[i]);
    }
    return PiecewisePoly(a_, Rat(0), ends_, std::move(out));
}

Rat PiecewisePoly::integral(const Rat& x, const Rat& y) const {
    PiecewisePoly c = cumulative();
    return c(y) - c(x);
}

int PiecewisePoly::max_degree() const {
    int d = 0;
    for (const auto& p : polys_) d = std::max(d, p.degree());
    return d;
}

StepFn PiecewisePoly::to_step() const {
    if (!is_step()) throw UnsupportedError("piecewise polynomial is not a step function");
    std::vector<Rat> v;
    for (const auto& p : polys_) v.push_back(p.c.empty() ? Rat(0) : p.c[0]);
    return StepFn(a_, base_, ends_, std::move(v));
}

PiecewisePoly PiecewisePoly::combine(const PiecewisePoly& f, const PiecewisePoly& g, int op) {
    if (f.lo() != g.lo() || f.hi() != g.hi()) throw DomainError("piecewise polynomials on different intervals");
    auto apply = [op](const Poly& p, const Poly& q) {
        return op == 0 ? p + q : op == 1 ? p - q : p * q;
    };
    auto applyr = [op](const Rat& p, const Rat& q) {
        return op == 0 ? p + q : op == 1 ? p - q : p * q;
    };
    std::vector<Rat> e;
    std::vector<Poly> ps;
    size_t i = 0, j = 0;
    while (i < f.size() && j < g.size()) {
        ps.push_back(apply(f.polys_[i], g.polys_[j]));
        if (f.ends_[i] < g.ends_[j]) e.push_back(f.ends_[i++]);
        else if (g.ends_[j] < f.ends_[i]) e.push_back(g.ends_[j++]);
        else { e.push_back(f.ends_[i]); ++i; ++j; }
    }
    return PiecewisePoly(f.a_, applyr(f.base_, g.base_), std::move(e), std::move(ps));
}

PiecewisePoly operator*(const Rat& s, const PiecewisePoly& f) {
    std::vector<Poly> ps;
    for (const auto& p : f.polys_) ps.push_back(s * p);
    return PiecewisePoly(f.a_, s * f.base_, f.ends_, std::move(ps));
}

bool operator==(const PiecewisePoly& f, const PiecewisePoly& g) {
    return f.a_ == g.a_ && f.base_ == g.base_ && f.ends_ == g.ends_ && f.polys_ == g.polys_;
}

PiecewisePoly PiecewisePoly::derivative() const {
    std::vector<Poly> d;
    for (auto& p : polys_) d.push_back(p.derivative());
    Rat base = d[0](a_);
    return PiecewisePoly(a_, base, ends_, std::move(d));
}

PiecewisePoly PiecewisePoly::restrict(const Rat& x, const Rat& y) const {
    if (x == a_ && y == hi()) return *this;
    if (x < a_ || y > hi() || !(x < y)) throw DomainError("restriction outside the data interval");
    std::vector<Rat> e;
    std::vector<Poly> p;
    for (size_t i = 0; i < size(); ++i) {
        if (ends_[i] <= x || left(i) >= y) continue;
        e.push_back(min(ends_[i], y));
        p.push_back(polys_[i]);
    }
    return PiecewisePoly(x, (*this)(x), std::move(e), std::move(p));
}

} // namespace lrp
