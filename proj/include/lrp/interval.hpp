#pragma once
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lrp {

// Domain interval with extended-real endpoints.
struct Interval {
    double lo = 0, hi = 1;
    bool lo_closed = true, hi_closed = true;

    Interval() = default;
    Interval(double a, double b, bool lc = true, bool hc = true);
    static Interval closed(double a, double b) { return Interval(a, b, true, true); }
    static Interval right_open(double a, double b) { return Interval(a, b, true, false); }

    bool contains(double t) const;
    bool compact() const { return std::isfinite(lo) && std::isfinite(hi) && lo_closed && hi_closed; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    double length() const { return hi - lo; }
    std::string str() const;
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Enclosure arithmetic. Results are widened by one ulp per operation, which
// absorbs the rounding of libm calls for the moderate arguments used here.
struct Iv {
    double lo = 0, hi = 0;
    Iv() = default;
    Iv(double v) : lo(v), hi(v) {}
    Iv(double a, double b) : lo(a), hi(b) {}
    static Iv entire() { return {-INFINITY, INFINITY}; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool is_nan() const { return std::isnan(lo) || std::isnan(hi); }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

Iv widen(Iv a);
Iv hull(Iv a, Iv b);
Iv operator+(Iv a, Iv b);
Iv operator-(Iv a, Iv b);
Iv operator-(Iv a);
Iv operator*(Iv a, Iv b);
Iv recip(Iv a);          // treats a as an open set when an endpoint is 0
Iv ipow(Iv a, int k);
Iv isqrt(Iv a);
Iv isin(Iv a);
Iv icos(Iv a);
Iv iatan(Iv a);
Iv itanh(Iv a);
Iv iexp(Iv a);
Iv iabs(Iv a);
Iv imax(Iv a, Iv b);
Iv imin(Iv a, Iv b);

} // namespace lrp
