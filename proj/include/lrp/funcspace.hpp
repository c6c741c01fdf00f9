#pragma once
#include "lrp/quadrature.hpp"
#include "lrp/regulated.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lrp {

Limits limits(const RegulatedFn& f, double t);

// Left-continuous step function with double data, used for numeric
// approximations that may have millions of cells.
struct NumStep {
    double a = 0, base = 0;
    std::vector<double> ends, vals;
    std::vector<unsigned char> residual;   // 1: oscillation bound not reached in this cell

    size_t size() const { return ends.size(); }
    double lo() const { return a; }
    double hi() const { return ends.back(); }
    double left(size_t i) const { return i == 0 ? a : ends[i - 1]; }
    size_t cell_of(double t) const;   // requires a < t <= hi
    double operator()(double t) const;
    static NumStep from_exact(const StepFn& s);
};

struct StepApproxOptions {
    size_t max_cells = 40'000'000;
    // a cell touching a declared break point stops refining at this width
    // (0: |J| * 2^-15); elsewhere refinement goes down to |J| * 1e-14
    double residual_width = 0;
};

struct StepApprox {
    int n = 0;
    NumStep step;
    std::optional<StepFn> exact;   // set when the input is already exact step data
    bool certified = false;
    size_t residual_cells = 0;
    double residual_length = 0;
};

// Cells (x, y] carrying f(y) = f(y-), each within 1/n of f on the cell.
// Cells that never reach the bound (next to second-kind discontinuities)
// are kept and flagged.
StepApprox step_approximation(const RegulatedFn& f, int n, const Interval& J, const StepApproxOptions& opt = {});
// one fine build coarsened to each requested level (levels need not be sorted)
std::vector<StepApprox> step_approximation_levels(const RegulatedFn& f, const std::vector<int>& levels,
                                                  const Interval& J, const StepApproxOptions& opt = {});

RegulatedFn join(const RegulatedFn& f, const RegulatedFn& g);
RegulatedFn meet(const RegulatedFn& f, const RegulatedFn& g);
RegulatedFn abs(const RegulatedFn& f);
RegulatedFn pos(const RegulatedFn& f);
RegulatedFn neg(const RegulatedFn& f);

enum class NormKind { Alexiewicz, L1, Sup };
NormKind parse_norm_kind(const std::string& s);
std::string to_string(NormKind k);

struct NormValue {
    double value = 0;
    double error = 0;
    bool certified = false;
    std::optional<Rat> exact;
};

Rat norm_exact(const StepFn& f, NormKind kind);

// real roots in [lo, hi] of a polynomial with ascending double coefficients
std::vector<double> real_roots(const std::vector<double>& c, double lo, double hi);
NormValue norm(const RegulatedFn& F, NormKind kind, const Interval& J, double tol = 1e-10);

// Countably stepped function on [a, b]: a finite head on [a, c] followed by
// contiguous cells (x_m, y_m], m = m0, m0+1, ..., accumulating at b.
struct CountableStep {
    Rat a, b;
    StepFn head;   // on [a, c]; c = x_{m0}
    long m0 = 0;
    std::function<StepPiece(long m)> cell;
    // cell integrals v_m (y_m - x_m) alternate in sign with strictly
    // decreasing magnitude (tends to 0 since cells shrink)
    bool alternating_decreasing = false;
    std::optional<Rat> abs_value;   // |v_m| constant on the tail

    // validates the declared structure on a prefix of the tail
    void check(long prefix = 2000) const;
    // this - g for a finite step g on [a, b] that vanishes near b
    CountableStep minus(const StepFn& g) const;
    double value(double t) const;
};
Rat norm_exact(const CountableStep& f, NormKind kind);

// Sum over the exhaustion of ||F - G||_n / (1 + ||F - G||_n), truncated after
// `depth` intervals; tail_bound counts the dropped terms (each term < 1).
struct MetricValue {
    double value = 0;
    double tail_bound = 0;
    size_t terms = 0;
};
MetricValue local_metric(const RegulatedFn& F, const RegulatedFn& G, NormKind kind,
                         const std::vector<Interval>& exhaustion, size_t depth = 64);

struct Classification {
    bool locally_riemann = false;
    bool locally_lebesgue = false;
    bool locally_hk = false;
    bool certified = false;
    std::vector<double> unbounded_at;   // points where the function is not locally bounded
    std::string note;
};
Classification classify(const RegulatedFn& F, const Interval& J);

QuadResult integrate_regulated(const RegulatedFn& F, double a, double b, double tol);

struct FdPoint {
    double t = 0, fd = 0, g = 0, deviation = 0;
    bool skipped = false;
    std::string note;
};
struct FdReport {
    std::vector<FdPoint> points;
    double max_deviation = 0;
    size_t checked = 0, skipped = 0;
};
FdReport fd_derivative_check(const RegulatedFn& F, const RegulatedFn& G, const std::vector<double>& points,
                             double h0);

} // namespace lrp
