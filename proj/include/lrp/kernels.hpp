#pragma once
#include <cstddef>

// Dense grid kernels used by the solver. Each has a scalar reference and an
// AVX2 variant; the dispatching entry points pick one at first use. Both
// variants produce bit-identical results (no FMA, same operation order).
namespace lrp::simd {

struct Omega {
    double min_sep = 1e-300;   // below this separation the last iterate is kept
    int dir = 1;               // +1 up chain (est >= x_n), -1 down chain (est <= x_n)
    double floor = -1e308;     // lower clamp, e.g. 0 for envelopes
};

double max_abs_diff(const double* a, const double* b, size_t n);
double max_violation(const double* lo, const double* hi, size_t n);   // max(lo - hi), -inf if n == 0
double max_abs(const double* a, size_t n);
void vmax(const double* a, const double* b, double* out, size_t n);
void vmin(const double* a, const double* b, double* out, size_t n);
void vabs(const double* a, double* out, size_t n);
void omega_extrapolate(const double* x0, const double* x1, const double* xp, const double* xn,
                       double* out, size_t n, const Omega& o);

bool avx2_available();
const char* active_variant();
void force_scalar(bool on);

namespace scalar {
double max_abs_diff(const double* a, const double* b, size_t n);
double max_violation(const double* lo, const double* hi, size_t n);
double max_abs(const double* a, size_t n);
void vmax(const double* a, const double* b, double* out, size_t n);
void vmin(const double* a, const double* b, double* out, size_t n);
void vabs(const double* a, double* out, size_t n);
void omega_extrapolate(const double* x0, const double* x1, const double* xp, const double* xn,
                       double* out, size_t n, const Omega& o);
}

namespace avx2 {
double max_abs_diff(const double* a, const double* b, size_t n);
double max_violation(const double* lo, const double* hi, size_t n);
double max_abs(const double* a, size_t n);
void vmax(const double* a, const double* b, double* out, size_t n);
void vmin(const double* a, const double* b, double* out, size_t n);
void vabs(const double* a, double* out, size_t n);
void omega_extrapolate(const double* x0, const double* x1, const double* xp, const double* xn,
                       double* out, size_t n, const Omega& o);
}

} // namespace lrp::simd
