#pragma once
#include "lrp/regulated.hpp"

#include <functional>
#include <string>

namespace lrp {

struct QuadResult {
    double value = 0;
    double error = 0;        // estimated (or certified, see flag) absolute error
    bool certified = true;   // error is a bound rather than an estimate
    size_t evals = 0;
    std::string method;
};

// Adaptive Gauss-Kronrod (7/15) with a global error budget.
QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol,
                         size_t max_intervals = 200000);

// Double-exponential rule for algebraic endpoint singularities.
QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol);

// Integral of f over [a, b] (oriented), split at declared break points, with
// enclosure-bounded tails next to oscillatory points, the substitution
// w = 1/(t - x0) plus period-block Richardson extrapolation next to
// reciprocal singularities, and shell-based divergence detection.
QuadResult integrate_fn(const RegulatedFn& f, double a, double b, double tol);

// Dyadic shell integrals next to x0 on the side pointing into (x0, x1):
// shells (x0 + d 2^-(k+1), x0 + d 2^-k], k = 0..count-1. Mirrored if x1 < x0.
struct Shells {
    std::vector<double> signed_, absolute;
    bool complete = true;   // false if some shell hit the interval budget
};
Shells shell_integrals(const RegulatedFn& f, double x0, double x1, int count);
bool shells_decay(const std::vector<double>& s);

} // namespace lrp
