#include "lrp/kernels.hpp"

#include <cmath>

namespace lrp::simd::scalar {

// max/min written as the hardware instructions define them (second operand on NaN)
static inline double mx(double a, double b) { return a > b ? a : b; }
static inline double mn(double a, double b) { return a < b ? a : b; }

double max_abs_diff(const double* a, const double* b, size_t n) {
    double m = 0;
    for (size_t i = 0; i < n; ++i) m = mx(std::fabs(a[i] - b[i]), m);
    return m;
}

double max_violation(const double* lo, const double* hi, size_t n) {
    double m = -INFINITY;
    for (size_t i = 0; i < n; ++i) m = mx(lo[i] - hi[i], m);
    return m;
}

double max_abs(const double* a, size_t n) {
    double m = 0;
    for (size_t i = 0; i < n; ++i) m = mx(std::fabs(a[i]), m);
    return m;
}

void vmax(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = mx(a[i], b[i]);
}

void vmin(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = mn(a[i], b[i]);
}

void vabs(const double* a, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i]);
}

void omega_extrapolate(const double* x0, const double* x1, const double* xp, const double* xn,
                       double* out, size_t n, const Omega& o) {
    for (size_t i = 0; i < n; ++i) {
        double den = xp[i] - x0[i];
        double r = xn[i];
        if (std::fabs(den) > o.min_sep) {
            double b = (xn[i] - x1[i]) / den;
            if (b >= 0.0 && b < 1.0) {
                double est = (xn[i] - b * xp[i]) / (1.0 - b);
                r = o.dir > 0 ? mx(est, xn[i]) : mn(est, xn[i]);
            }
        }
        out[i] = mx(r, o.floor);
    }
}

} // namespace lrp::simd::scalar
