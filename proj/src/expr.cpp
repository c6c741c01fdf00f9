#include "lrp/expr.hpp"
#include "lrp/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

namespace lrp {

Val Val::bnd(double lo, double hi) {
    Val r;
    r.k = K::Bnd;
    r.lo = lo;
    r.hi = hi;
    return r;
}

namespace {

using K = Val::K;

bool is_inf(const Val& a) { return a.k == K::PInf || a.k == K::NInf; }
int inf_sign(const Val& a) { return a.k == K::PInf ? 1 : -1; }
Val signed_inf(int s) { return s > 0 ? Val::pinf() : Val::ninf(); }
double sgn(double x) { return x > 0 ? 1.0 : x < 0 ? -1.0 : 0.0; }

// range of a finite-or-bounded value as an interval
Iv range_of(const Val& a) {
    if (a.k == K::Fin) return Iv(a.v);
    if (a.k == K::Bnd) return Iv(a.lo, a.hi);
    if (a.k == K::PInf) return Iv(INFINITY, INFINITY);
    if (a.k == K::NInf) return Iv(-INFINITY, -INFINITY);
    return Iv::entire();
}

Val from_range(Iv r) {
    if (r.is_nan()) return Val::undef();
    if (r.lo == r.hi) return Val::fin(r.lo, 0, false);
    return Val::bnd(r.lo, r.hi);
}

} // namespace

Val operator-(const Val& a) {
    switch (a.k) {
    case K::Fin: return Val::fin(-a.v, -a.d, a.dir_known);
    case K::PInf: return Val::ninf();
    case K::NInf: return Val::pinf();
    case K::Bnd: return Val::bnd(-a.hi, -a.lo);
    default: return a;
    }
}

Val operator+(const Val& a, const Val& b) {
    if (a.k == K::Undef || b.k == K::Undef) return Val::undef();
    if (a.k == K::Fin && b.k == K::Fin) return Val::fin(a.v + b.v, a.d + b.d, a.dir_known && b.dir_known);
    if (is_inf(a) && is_inf(b)) return inf_sign(a) == inf_sign(b) ? a : Val::undef();
    if (is_inf(a)) return a;
    if (is_inf(b)) return b;
    Iv r = range_of(a);
    Iv s = range_of(b);
    return Val::bnd(r.lo + s.lo, r.hi + s.hi);
}

Val operator*(const Val& a, const Val& b) {
    if (a.k == K::Undef || b.k == K::Undef) return Val::undef();
    if (a.k == K::Fin && b.k == K::Fin) {
        double d = (a.v == 0 && b.v == 0) ? a.d * b.d : a.v * b.d + b.v * a.d;
        return Val::fin(a.v * b.v, d, a.dir_known && b.dir_known);
    }
    const Val& f = a.k == K::Fin ? a : b;
    const Val& o = a.k == K::Fin ? b : a;
    if (f.k == K::Fin) {
        if (o.k == K::Bnd) {
            if (f.v == 0) return Val::fin(0, 0, false);
            double l = f.v * o.lo, h = f.v * o.hi;
            return Val::bnd(std::min(l, h), std::max(l, h));
        }
        // o infinite
        if (f.v == 0) return Val::undef();
        return signed_inf(int(sgn(f.v)) * inf_sign(o));
    }
    if (is_inf(a) && is_inf(b)) return signed_inf(inf_sign(a) * inf_sign(b));
    if (a.k == K::Bnd && b.k == K::Bnd) {
        Iv r = Iv(a.lo, a.hi) * Iv(b.lo, b.hi);
        return Val::bnd(r.lo, r.hi);
    }
    // bounded times infinite
    const Val& bd = a.k == K::Bnd ? a : b;
    const Val& in = a.k == K::Bnd ? b : a;
    if (bd.lo > 0) return in;
    if (bd.hi < 0) return -in;
    return Val::undef();
}

namespace sym {

Expr::Expr(double c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->c = c;
    p_ = n;
}

namespace {

Expr mk(Op op, NodeP a = nullptr, NodeP b = nullptr, int k = 0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->k = k;
    return Expr(NodeP(n));
}

bool is_const(const Expr& e, double v) { return e.node().op == Op::Const && e.node().c == v; }

} // namespace

Expr t() { return mk(Op::T); }
Expr n() { return mk(Op::N); }
Expr constant(double c) { return Expr(c); }
Expr operator+(const Expr& a, const Expr& b) {
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    return mk(Op::Add, a.ptr(), b.ptr());
}
Expr operator-(const Expr& a) {
    if (a.node().op == Op::Const) return Expr(-a.node().c);
    return mk(Op::Neg, a.ptr());
}
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator*(const Expr& a, const Expr& b) {
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    return mk(Op::Mul, a.ptr(), b.ptr());
}
Expr recip(const Expr& a) { return mk(Op::Recip, a.ptr()); }
Expr operator/(const Expr& a, const Expr& b) { return a * recip(b); }
Expr pow(const Expr& a, int k) { return mk(Op::Pow, a.ptr(), nullptr, k); }
Expr sqrt(const Expr& a) { return mk(Op::Sqrt, a.ptr()); }
Expr sin(const Expr& a) { return mk(Op::Sin, a.ptr()); }
Expr cos(const Expr& a) { return mk(Op::Cos, a.ptr()); }
Expr atan(const Expr& a) { return mk(Op::Atan, a.ptr()); }
Expr tanh(const Expr& a) { return mk(Op::Tanh, a.ptr()); }
Expr exp(const Expr& a) { return mk(Op::Exp, a.ptr()); }
Expr abs(const Expr& a) { return mk(Op::Abs, a.ptr()); }
Expr floor_right(const Expr& a) { return mk(Op::FloorRight, a.ptr()); }
Expr floor_left(const Expr& a) { return mk(Op::FloorLeft, a.ptr()); }
Expr heaviside(const Expr& a) { return mk(Op::Heaviside, a.ptr()); }
Expr series(const Expr& term, int m) {
    if (m < 1) throw ConfigError("series depth must be >= 1");
    return mk(Op::Series, term.ptr(), nullptr, m);
}

// ---- plain evaluation ----

double eval_node(const NodeP& p, double t, int n, bool& ok) {
    const Node& e = *p;
    switch (e.op) {
    case Op::Const: return e.c;
    case Op::T: return t;
    case Op::N: return double(n);
    case Op::Add: return eval_node(e.a, t, n, ok) + eval_node(e.b, t, n, ok);
    case Op::Mul: return eval_node(e.a, t, n, ok) * eval_node(e.b, t, n, ok);
    case Op::Neg: return -eval_node(e.a, t, n, ok);
    case Op::Recip: {
        double z = eval_node(e.a, t, n, ok);
        if (z == 0) { ok = false; return 0; }
        return 1.0 / z;
    }
    case Op::Pow: {
        double z = eval_node(e.a, t, n, ok);
        if (z == 0 && e.k < 0) { ok = false; return 0; }
        return std::pow(z, e.k);
    }
    case Op::Sqrt: {
        double z = eval_node(e.a, t, n, ok);
        if (z < 0) { ok = false; return 0; }
        return std::sqrt(z);
    }
    case Op::Sin: return std::sin(eval_node(e.a, t, n, ok));
    case Op::Cos: return std::cos(eval_node(e.a, t, n, ok));
    case Op::Atan: return std::atan(eval_node(e.a, t, n, ok));
    case Op::Tanh: return std::tanh(eval_node(e.a, t, n, ok));
    case Op::Exp: return std::exp(eval_node(e.a, t, n, ok));
    case Op::Abs: return std::fabs(eval_node(e.a, t, n, ok));
    case Op::FloorRight: {
        double z = eval_node(e.a, t, n, ok);
        double f = std::floor(z);
        if (f == z) ok = false;   // left branch differs from the value here
        return f;
    }
    case Op::FloorLeft: return std::ceil(eval_node(e.a, t, n, ok));
    case Op::Heaviside: return eval_node(e.a, t, n, ok) > 0 ? 1.0 : 0.0;
    case Op::Series: {
        double s = 0;
        for (int j = 1; j <= e.k; ++j) s += eval_node(e.a, t, j, ok);
        return s;
    }
    }
    return 0;
}

std::optional<double> eval_fast(const Expr& e, double t) {
    bool ok = true;
    double v = eval_node(e.ptr(), t, 0, ok);
    if (!ok || !std::isfinite(v)) return std::nullopt;
    return v;
}

// ---- one-sided evaluation ----

namespace {

Val jet(const NodeP& p, const Val& tv, int n) {
    const Node& e = *p;
    switch (e.op) {
    case Op::Const: return Val::fin(e.c);
    case Op::T: return tv;
    case Op::N: return Val::fin(double(n));
    case Op::Add: return jet(e.a, tv, n) + jet(e.b, tv, n);
    case Op::Mul: return jet(e.a, tv, n) * jet(e.b, tv, n);
    case Op::Neg: return -jet(e.a, tv, n);
    case Op::Recip: {
        Val z = jet(e.a, tv, n);
        switch (z.k) {
        case K::Fin:
            if (z.v != 0) return Val::fin(1.0 / z.v, -z.d / (z.v * z.v), z.dir_known);
            if (z.d == 0 || !z.dir_known) return Val::undef();
            return z.d > 0 ? Val::pinf() : Val::ninf();
        case K::PInf: return Val::fin(0, 1);
        case K::NInf: return Val::fin(0, -1);
        case K::Bnd:
            if (z.lo > 0 || z.hi < 0) return Val::bnd(1.0 / z.hi, 1.0 / z.lo);
            return Val::undef();
        default: return z;
        }
    }
    case Op::Pow: {
        Val z = jet(e.a, tv, n);
        int k = e.k;
        if (k == 0) return Val::fin(1);
        switch (z.k) {
        case K::Fin: {
            if (z.v == 0) {
                if (k < 0) {
                    if (z.d == 0 || !z.dir_known) return Val::undef();
                    double s = (k % 2 == 0) ? 1.0 : sgn(z.d);
                    return s > 0 ? Val::pinf() : Val::ninf();
                }
                double d = (k % 2 == 0) ? std::fabs(z.d) : z.d;
                return Val::fin(0, sgn(d), z.dir_known);
            }
            double v = std::pow(z.v, k);
            return Val::fin(v, k * std::pow(z.v, k - 1) * z.d, z.dir_known);
        }
        case K::PInf: return k > 0 ? Val::pinf() : Val::fin(0, 1);
        case K::NInf:
            if (k > 0) return (k % 2 == 0) ? Val::pinf() : Val::ninf();
            return Val::fin(0, (k % 2 == 0) ? 1 : -1);
        case K::Bnd: return from_range(ipow(Iv(z.lo, z.hi), k));
        default: return z;
        }
    }
    case Op::Sqrt: {
        Val z = jet(e.a, tv, n);
        switch (z.k) {
        case K::Fin:
            if (z.v > 0) { double r = std::sqrt(z.v); return Val::fin(r, z.d / (2 * r), z.dir_known); }
            if (z.v < 0) return Val::undef();
            if (z.d > 0) return Val::fin(0, 1, z.dir_known);
            if (z.d < 0) return Val::undef();
            return Val::fin(0, 0, z.dir_known);
        case K::PInf: return z;
        case K::Bnd: return z.lo >= 0 ? from_range(isqrt(Iv(z.lo, z.hi))) : Val::undef();
        default: return Val::undef();
        }
    }
    case Op::Sin:
    case Op::Cos: {
        Val z = jet(e.a, tv, n);
        bool s = e.op == Op::Sin;
        switch (z.k) {
        case K::Fin:
            return s ? Val::fin(std::sin(z.v), std::cos(z.v) * z.d, z.dir_known)
                     : Val::fin(std::cos(z.v), -std::sin(z.v) * z.d, z.dir_known);
        case K::PInf:
        case K::NInf: return Val::bnd(-1, 1);
        case K::Bnd: return from_range(s ? isin(Iv(z.lo, z.hi)) : icos(Iv(z.lo, z.hi)));
        default: return z;
        }
    }
    case Op::Atan:
    case Op::Tanh: {
        Val z = jet(e.a, tv, n);
        bool at = e.op == Op::Atan;
        double lim = at ? 0.5 * std::numbers::pi : 1.0;
        switch (z.k) {
        case K::Fin: {
            if (at) return Val::fin(std::atan(z.v), z.d / (1 + z.v * z.v), z.dir_known);
            double th = std::tanh(z.v);
            return Val::fin(th, (1 - th * th) * z.d, z.dir_known);
        }
        case K::PInf: return Val::fin(lim, -1);
        case K::NInf: return Val::fin(-lim, 1);
        case K::Bnd: return from_range(at ? iatan(Iv(z.lo, z.hi)) : itanh(Iv(z.lo, z.hi)));
        default: return z;
        }
    }
    case Op::Exp: {
        Val z = jet(e.a, tv, n);
        switch (z.k) {
        case K::Fin: { double v = std::exp(z.v); return Val::fin(v, v * z.d, z.dir_known); }
        case K::PInf: return z;
        case K::NInf: return Val::fin(0, 1);
        case K::Bnd: return from_range(iexp(Iv(z.lo, z.hi)));
        default: return z;
        }
    }
    case Op::Abs: {
        Val z = jet(e.a, tv, n);
        switch (z.k) {
        case K::Fin:
            if (z.v > 0) return z;
            if (z.v < 0) return -z;
            return Val::fin(0, std::fabs(z.d), z.dir_known);
        case K::PInf:
        case K::NInf: return Val::pinf();
        case K::Bnd: return from_range(iabs(Iv(z.lo, z.hi)));
        default: return z;
        }
    }
    case Op::FloorRight:
    case Op::FloorLeft: {
        Val z = jet(e.a, tv, n);
        bool right = e.op == Op::FloorRight;
        switch (z.k) {
        case K::Fin: {
            double f = right ? std::floor(z.v) : std::ceil(z.v);
            if (f == z.v) {
                if (z.d == 0 && !z.dir_known) return Val::undef();
                if (right && z.d < 0) f -= 1;
                if (!right && z.d > 0) f += 1;
            }
            return Val::fin(f, 0, true);
        }
        case K::PInf:
        case K::NInf: return z;
        case K::Bnd: {
            if (right) {
                double fl = std::floor(z.lo), fh = std::floor(z.hi);
                if (fl == fh && z.lo != fl) return Val::fin(fl, 0, true);
            } else {
                double cl = std::ceil(z.lo), ch = std::ceil(z.hi);
                if (cl == ch && z.hi != ch) return Val::fin(cl, 0, true);
            }
            return Val::undef();
        }
        default: return z;
        }
    }
    case Op::Heaviside: {
        Val z = jet(e.a, tv, n);
        switch (z.k) {
        case K::Fin:
            if (z.v > 0) return Val::fin(1);
            if (z.v < 0) return Val::fin(0);
            if (z.d > 0) return Val::fin(1);
            if (z.d < 0) return Val::fin(0);
            return z.dir_known ? Val::fin(0) : Val::undef();
        case K::PInf: return Val::fin(1);
        case K::NInf: return Val::fin(0);
        case K::Bnd:
            if (z.lo > 0) return Val::fin(1);
            if (z.hi < 0) return Val::fin(0);
            return Val::undef();
        default: return z;
        }
    }
    case Op::Series: {
        Val s = Val::fin(0);
        for (int j = 1; j <= e.k; ++j) s = s + jet(e.a, tv, j);
        return s;
    }
    }
    return Val::undef();
}

} // namespace

Val eval_side(const Expr& e, double t, Side side) {
    double d = side == Side::Left ? -1.0 : side == Side::Right ? 1.0 : 0.0;
    return jet(e.ptr(), Val::fin(t, d, true), 0);
}

// ---- enclosures ----

namespace {

double snap(double x) {
    double r = std::nearbyint(x);
    if (std::fabs(x - r) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x))) return r;
    return x;
}

// shared subtrees (u and 1/u in the series builders) are enclosed once per call
struct EncMemo {
    const Node* p;
    int n;
    Iv v;
};
thread_local std::vector<EncMemo> enc_memo;

Iv enc_raw(const NodeP& p, Iv tv, int n);

Iv enc(const NodeP& p, Iv tv, int n) {
    if (p.use_count() <= 1 || p->op == Op::Const || p->op == Op::T || p->op == Op::N) return enc_raw(p, tv, n);
    for (const EncMemo& m : enc_memo)
        if (m.p == p.get() && m.n == n) return m.v;
    Iv v = enc_raw(p, tv, n);
    enc_memo.push_back({p.get(), n, v});
    return v;
}

Iv enc_raw(const NodeP& p, Iv tv, int n) {
    const Node& e = *p;
    switch (e.op) {
    case Op::Const: return Iv(e.c);
    case Op::T: return tv;
    case Op::N: return Iv(double(n));
    case Op::Add: return enc(e.a, tv, n) + enc(e.b, tv, n);
    case Op::Mul: return enc(e.a, tv, n) * enc(e.b, tv, n);
    case Op::Neg: return -enc(e.a, tv, n);
    case Op::Recip: return recip(enc(e.a, tv, n));
    case Op::Pow: return ipow(enc(e.a, tv, n), e.k);
    case Op::Sqrt: {
        Iv z = enc(e.a, tv, n);
        if (z.lo < 0 && z.lo > -1e-300) z.lo = 0;
        if (z.lo < 0) {
            // negative part only reachable through rounding of an open cell edge
            if (z.hi < 0) return Iv(NAN, NAN);
            z.lo = 0;
        }
        return isqrt(z);
    }
    case Op::Sin: return isin(enc(e.a, tv, n));
    case Op::Cos: return icos(enc(e.a, tv, n));
    case Op::Atan: return iatan(enc(e.a, tv, n));
    case Op::Tanh: return itanh(enc(e.a, tv, n));
    case Op::Exp: return iexp(enc(e.a, tv, n));
    case Op::Abs: return iabs(enc(e.a, tv, n));
    case Op::FloorRight:
    case Op::FloorLeft: {
        Iv z = enc(e.a, tv, n);
        if (!z.bounded()) return Iv::entire();
        double lo = snap(z.lo), hi = snap(z.hi);
        bool right = e.op == Op::FloorRight;
        if (lo == hi) return Iv(right ? std::floor(lo) : std::ceil(lo));
        double fl, fh;
        if (right) { fl = std::floor(lo); fh = std::ceil(hi) - 1; }
        else { fl = std::floor(lo) + 1; fh = std::ceil(hi); }
        if (fh < fl) fh = fl;
        return Iv(fl, fh);
    }
    case Op::Heaviside: {
        Iv z = enc(e.a, tv, n);
        if (z.lo == z.hi) return Iv(z.lo > 0 ? 1.0 : 0.0);
        if (z.lo >= 0) return Iv(1.0);
        if (z.hi <= 0) return Iv(0.0);
        return Iv(0.0, 1.0);
    }
    case Op::Series: {
        Iv s(0.0);
        for (int j = 1; j <= e.k; ++j) s = s + enc(e.a, tv, j);
        return s;
    }
    }
    return Iv::entire();
}

} // namespace

Iv enclose(const Expr& e, double lo, double hi) {
    enc_memo.clear();
    Iv r = enc_raw(e.ptr(), Iv(lo, hi), 0);
    enc_memo.clear();
    if (r.is_nan()) return Iv::entire();
    return r;
}

// ---- break points ----

namespace {

// affine form alpha*t + beta of a subtree, if it is affine
std::optional<std::pair<double, double>> affine(const NodeP& p, int n) {
    const Node& e = *p;
    switch (e.op) {
    case Op::Const: return std::pair{0.0, e.c};
    case Op::T: return std::pair{1.0, 0.0};
    case Op::N: return std::pair{0.0, double(n)};
    case Op::Add: {
        auto a = affine(e.a, n), b = affine(e.b, n);
        if (!a || !b) return std::nullopt;
        return std::pair{a->first + b->first, a->second + b->second};
    }
    case Op::Neg: {
        auto a = affine(e.a, n);
        if (!a) return std::nullopt;
        return std::pair{-a->first, -a->second};
    }
    case Op::Mul: {
        auto a = affine(e.a, n), b = affine(e.b, n);
        if (!a || !b) return std::nullopt;
        if (a->first != 0 && b->first != 0) return std::nullopt;
        if (a->first == 0) return std::pair{a->second * b->first, a->second * b->second};
        return std::pair{b->second * a->first, b->second * a->second};
    }
    default: {
        // any subtree free of t is constant
        bool ok = true;
        std::function<bool(const NodeP&)> has_t = [&](const NodeP& q) -> bool {
            if (!q) return false;
            if (q->op == Op::T) return true;
            if (q->op == Op::Series) return true;
            return has_t(q->a) || has_t(q->b);
        };
        if (has_t(p)) return std::nullopt;
        double v = eval_node(p, 0.0, n, ok);
        if (!ok) return std::nullopt;
        return std::pair{0.0, v};
    }
    }
}

void collect(const NodeP& p, int n, double lo, double hi, std::vector<double>& out) {
    if (!p) return;
    const Node& e = *p;
    if (e.op == Op::Series) {
        for (int j = 1; j <= e.k; ++j) collect(e.a, j, lo, hi, out);
        return;
    }
    if (e.op == Op::FloorRight || e.op == Op::FloorLeft || e.op == Op::Heaviside ||
        e.op == Op::Recip || e.op == Op::Sqrt || (e.op == Op::Pow && e.k < 0)) {
        auto af = affine(e.a, n);
        if (af && af->first != 0) {
            double al = af->first, be = af->second;
            if (e.op == Op::FloorRight || e.op == Op::FloorLeft) {
                double z0 = al * lo + be, z1 = al * hi + be;
                double zl = std::min(z0, z1), zh = std::max(z0, z1);
                for (double k = std::ceil(zl); k <= zh; k += 1) {
                    double x = (k - be) / al;
                    if (x >= lo && x <= hi) out.push_back(x);
                }
            } else {
                double x = -be / al;
                if (x >= lo && x <= hi) out.push_back(x);
            }
        }
    }
    collect(e.a, n, lo, hi, out);
    collect(e.b, n, lo, hi, out);
}

void collect_trig(const NodeP& p, int n, bool in_series, std::vector<TrigArg>& out) {
    if (!p) return;
    if (p->op == Op::Series) {
        for (int j = 1; j <= p->k; ++j) collect_trig(p->a, j, true, out);
        return;
    }
    if (p->op == Op::Sin || p->op == Op::Cos) out.push_back({p->a, n});
    collect_trig(p->a, n, in_series, out);
    collect_trig(p->b, n, in_series, out);
}

} // namespace

std::vector<double> break_points(const Expr& e, double lo, double hi) {
    std::vector<double> out;
    collect(e.ptr(), 0, lo, hi, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<TrigArg> trig_args(const Expr& e) {
    std::vector<TrigArg> out;
    collect_trig(e.ptr(), 0, false, out);
    return out;
}

namespace {

std::string str(const NodeP& p) {
    const Node& e = *p;
    char buf[64];
    switch (e.op) {
    case Op::Const: std::snprintf(buf, sizeof buf, "%.17g", e.c); return buf;
    case Op::T: return "t";
    case Op::N: return "n";
    case Op::Add: return "(" + str(e.a) + " + " + str(e.b) + ")";
    case Op::Mul: return "(" + str(e.a) + " * " + str(e.b) + ")";
    case Op::Neg: return "-(" + str(e.a) + ")";
    case Op::Recip: return "1/(" + str(e.a) + ")";
    case Op::Pow: return "(" + str(e.a) + ")^" + std::to_string(e.k);
    case Op::Sqrt: return "sqrt(" + str(e.a) + ")";
    case Op::Sin: return "sin(" + str(e.a) + ")";
    case Op::Cos: return "cos(" + str(e.a) + ")";
    case Op::Atan: return "atan(" + str(e.a) + ")";
    case Op::Tanh: return "tanh(" + str(e.a) + ")";
    case Op::Exp: return "exp(" + str(e.a) + ")";
    case Op::Abs: return "|" + str(e.a) + "|";
    case Op::FloorRight: return "[" + str(e.a) + "]";
    case Op::FloorLeft: return "floorleft(" + str(e.a) + ")";
    case Op::Heaviside: return "H1(" + str(e.a) + ")";
    case Op::Series: return "sum_{n=1}^{" + std::to_string(e.k) + "} " + str(e.a);
    }
    return "?";
}

bool same_node(const NodeP& a, const NodeP& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op || a->k != b->k) return false;
    if (a->op == Op::Const && !(a->c == b->c)) return false;
    return same_node(a->a, b->a) && same_node(a->b, b->b);
}

} // namespace

std::string to_string(const Expr& e) { return str(e.ptr()); }
bool same(const Expr& a, const Expr& b) { return same_node(a.ptr(), b.ptr()); }

} // namespace sym
} // namespace lrp
