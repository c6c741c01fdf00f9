#include "lrp/interval.hpp"
#include "lrp/error.hpp"

#include <cstdio>
#include <numbers>

namespace lrp {

Interval::Interval(double a, double b, bool lc, bool hc) : lo(a), hi(b), lo_closed(lc), hi_closed(hc) {
    if (!(a < b)) throw DomainError("interval needs lo < hi");
    if (!std::isfinite(a)) lo_closed = false;
    if (!std::isfinite(b)) hi_closed = false;
}

bool Interval::contains(double t) const {
    if (t < lo || t > hi) return false;
    if (t == lo && !lo_closed) return false;
    if (t == hi && !hi_closed) return false;
    return true;
}

std::string Interval::str() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%c%.17g, %.17g%c", lo_closed ? '[' : '(', lo, hi, hi_closed ? ']' : ')');
    return buf;
}

// at least one ulp outward for finite values (relative bump 2^-52 plus the
// smallest subnormal); cheaper than nextafter in the inner loops
static inline double bump_down(double x) { return std::isfinite(x) ? x - (std::fabs(x) * 0x1p-52 + 0x1p-1074) : x; }
static inline double bump_up(double x) { return std::isfinite(x) ? x + (std::fabs(x) * 0x1p-52 + 0x1p-1074) : x; }

Iv widen(Iv a) {
    if (a.is_nan()) return Iv::entire();
    return {bump_down(a.lo), bump_up(a.hi)};
}

Iv hull(Iv a, Iv b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

Iv operator+(Iv a, Iv b) { return widen({a.lo + b.lo, a.hi + b.hi}); }
Iv operator-(Iv a, Iv b) { return widen({a.lo - b.hi, a.hi - b.lo}); }
Iv operator-(Iv a) { return {-a.hi, -a.lo}; }

Iv operator*(Iv a, Iv b) {
    if (a.lo == a.hi && a.lo == 0) return Iv(0.0);
    if (b.lo == b.hi && b.lo == 0) return Iv(0.0);
    double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double lo = p[0], hi = p[0];
    for (double v : p) {
        if (std::isnan(v)) return Iv::entire();
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return widen({lo, hi});
}

Iv recip(Iv a) {
    if (a.lo > 0 || a.hi < 0) return widen({1.0 / a.hi, 1.0 / a.lo});
    if (a.lo == 0 && a.hi > 0) return widen({1.0 / a.hi, INFINITY});
    if (a.hi == 0 && a.lo < 0) return widen({-INFINITY, 1.0 / a.lo});
    return Iv::entire();
}

Iv ipow(Iv a, int k) {
    if (k == 0) return Iv(1.0);
    if (k < 0) return recip(ipow(a, -k));
    double l = a.lo, h = a.hi;
    for (int i = 1; i < k; ++i) { l *= a.lo; h *= a.hi; }
    if (k % 2 == 1) return widen({l, h});
    if (a.lo >= 0) return widen({l, h});
    if (a.hi <= 0) return widen({h, l});
    return widen({0.0, std::max(l, h)});
}

Iv isqrt(Iv a) {
    if (a.hi < 0) return Iv(NAN, NAN);
    return widen({std::sqrt(std::max(0.0, a.lo)), std::sqrt(a.hi)});
}

static Iv trig_range(Iv a, double shift) {
    // range of sin(x + shift) for x in a
    if (!a.bounded() || a.width() >= 2 * std::numbers::pi) return {-1.0, 1.0};
    double lo = a.lo + shift, hi = a.hi + shift;
    double s0 = std::sin(lo), s1 = std::sin(hi);
    double rl = std::min(s0, s1), rh = std::max(s0, s1);
    const double tp = 2 * std::numbers::pi, hp = 0.5 * std::numbers::pi;
    // maxima at pi/2 + 2k pi, minima at -pi/2 + 2k pi
    double kmax = std::ceil((lo - hp) / tp);
    if (hp + kmax * tp <= hi) rh = 1.0;
    double kmin = std::ceil((lo + hp) / tp);
    if (-hp + kmin * tp <= hi) rl = -1.0;
    Iv r = widen({rl, rh});
    r.lo = std::max(r.lo, -1.0);
    r.hi = std::min(r.hi, 1.0);
    return r;
}

Iv isin(Iv a) { return trig_range(a, 0.0); }
Iv icos(Iv a) { return trig_range(a, 0.5 * std::numbers::pi); }
Iv iatan(Iv a) { return widen({std::atan(a.lo), std::atan(a.hi)}); }
Iv itanh(Iv a) {
    Iv r = widen({std::tanh(a.lo), std::tanh(a.hi)});
    r.lo = std::max(r.lo, -1.0);
    r.hi = std::min(r.hi, 1.0);
    return r;
}
Iv iexp(Iv a) {
    Iv r = widen({std::exp(a.lo), std::exp(a.hi)});
    r.lo = std::max(r.lo, 0.0);
    return r;
}
Iv iabs(Iv a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}
Iv imax(Iv a, Iv b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }
Iv imin(Iv a, Iv b) { return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)}; }

} // namespace lrp
