#include "lrp/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace lrp::simd {

namespace {

std::atomic<int> forced{-1};

bool use_avx2() {
    static const bool have = [] {
        if (std::getenv("LRP_FORCE_SCALAR")) return false;
        __builtin_cpu_init();
        return bool(__builtin_cpu_supports("avx2"));
    }();
    return have && forced.load(std::memory_order_relaxed) != 1;
}

} // namespace

bool avx2_available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}

const char* active_variant() { return use_avx2() ? "avx2" : "scalar"; }
void force_scalar(bool on) { forced.store(on ? 1 : 0); }

double max_abs_diff(const double* a, const double* b, size_t n) {
    return use_avx2() ? avx2::max_abs_diff(a, b, n) : scalar::max_abs_diff(a, b, n);
}
double max_violation(const double* lo, const double* hi, size_t n) {
    return use_avx2() ? avx2::max_violation(lo, hi, n) : scalar::max_violation(lo, hi, n);
}
double max_abs(const double* a, size_t n) {
    return use_avx2() ? avx2::max_abs(a, n) : scalar::max_abs(a, n);
}
void vmax(const double* a, const double* b, double* out, size_t n) {
    use_avx2() ? avx2::vmax(a, b, out, n) : scalar::vmax(a, b, out, n);
}
void vmin(const double* a, const double* b, double* out, size_t n) {
    use_avx2() ? avx2::vmin(a, b, out, n) : scalar::vmin(a, b, out, n);
}
void vabs(const double* a, double* out, size_t n) {
    use_avx2() ? avx2::vabs(a, out, n) : scalar::vabs(a, out, n);
}
void omega_extrapolate(const double* x0, const double* x1, const double* xp, const double* xn,
                       double* out, size_t n, const Omega& o) {
    use_avx2() ? avx2::omega_extrapolate(x0, x1, xp, xn, out, n, o)
               : scalar::omega_extrapolate(x0, x1, xp, xn, out, n, o);
}

} // namespace lrp::simd
