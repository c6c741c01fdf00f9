#pragma once
#include "lrp/error.hpp"
#include "lrp/funcspace.hpp"
#include "lrp/regulated.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace lrp {

// y -> (x, y] with x < y; either a positive width function or a finite table of
// left-open cells covering (a, b] (y is mapped to the table cell holding it).
class LeftGauge {
public:
    static LeftGauge width(std::function<double(double)> delta);
    static LeftGauge constant(double delta);
    static LeftGauge table(std::vector<std::pair<double, double>> cells);
    // left end x of gamma(y), before clipping to the interval
    double left_end(double y) const;
    // the intersection gauge y -> gamma1(y) cap gamma2(y)
    friend LeftGauge intersect(const LeftGauge& g1, const LeftGauge& g2);

private:
    std::function<double(double)> delta_;
    std::vector<std::pair<double, double>> table_;
};

struct LeftCell {
    double x = 0, y = 0, tag = 0;   // (x, y] with tag in (x, y]
};

// cells ordered left to right; complete when they cover (a, b]
struct LeftPartition {
    double a = 0, b = 0;
    std::vector<LeftCell> cells;
    bool complete = true;
    // for a partial partition: (a, residual_hi] is still uncovered
    double residual_hi = 0;
    // checks disjointness, coverage and tag placement; throws StructureError
    void validate() const;
    bool fine(const LeftGauge& g) const;   // each (x, y] inside gamma(y)
};

struct PartitionOverflow : Error {
    LeftPartition partial;
    PartitionOverflow(const std::string& what, LeftPartition p) : Error(what), partial(std::move(p)) {}
};

// greedy right-to-left construction; tags are the right ends
LeftPartition fine_partition(const LeftGauge& g, double a, double b, size_t max_cells = 1'000'000);
// same cells, tags drawn by `pick(x, y)` (must land in (x, y])
LeftPartition retag(const LeftPartition& p, const std::function<double(double, double)>& pick);

// mu_g((x, y]) = g(y+) - g(x+), with g(b+) := g(b) at the right end of g's interval
double mu_interval(const RegulatedFn& g, double x, double y);
Rat mu_interval_exact(const RegulatedFn& g, const Rat& x, const Rat& y);

// total variation of g on [a, b] (exact for step data; roots of g' for
// polynomial pieces); throws VariationError when not computable
struct Variation {
    double value = 0;
    std::optional<Rat> exact;
    bool certified = false;
};
Variation variation(const RegulatedFn& g, double a, double b);

struct StieltjesResult {
    double value = 0;
    double error = 0;
    std::optional<Rat> exact;
    bool certified = false;
    int level = 0;             // step approximation level used (0: exact path)
    size_t cells = 0;
};

// int_a^b F dg. Exact data: cell sums plus jump atoms in rational arithmetic.
// Otherwise a level-n step approximation of F with n >= Vg / tol, summed
// exactly against mu_g; error <= Vg / n. vg overrides the computed variation.
StieltjesResult stieltjes(const RegulatedFn& F, const RegulatedFn& g, double a, double b, double tol = 1e-6,
                          std::optional<double> vg = std::nullopt);

// rational endpoints, exact data only (UnsupportedError otherwise); oriented
StieltjesResult stieltjes_exact(const RegulatedFn& F, const RegulatedFn& g, const Rat& a, const Rat& b);

// sum F(tag_i) [g(y_i+) - g(x_i+)] over the partition; rational when F and g
// are exact
StieltjesResult stieltjes_sum(const RegulatedFn& F, const RegulatedFn& g, const LeftPartition& P);

} // namespace lrp
