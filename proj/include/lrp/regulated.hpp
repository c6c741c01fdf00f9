#pragma once
#include "lrp/expr.hpp"
#include "lrp/grid.hpp"
#include "lrp/interval.hpp"
#include "lrp/piecewise_poly.hpp"
#include "lrp/step_fn.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lrp {

struct Limits {
    std::optional<double> left;    // absent at the domain minimum
    double value = 0;
    std::optional<double> right;   // absent at a closed maximum or when it does not exist
};

// Symbolic function: expression, domain, and an optional key into the
// antiderivative registry (parameterised by the series depth).
struct SymbolicFn {
    sym::Expr expr;
    Interval domain;
    std::string name;
    std::string primitive_key;
    int m = 0;
};

// Grid function: value at node k is val[k] (the left limit off the minimum),
// right limit right[k]; linear from right[k] to val[k+1] between nodes, which
// keeps it left-continuous.
struct SampledFn {
    GridP grid;
    std::vector<double> val, right;
};

class RegulatedFn {
public:
    enum class Kind { Step, Poly, Symbolic, LinComb, Product, Pointwise, Sampled };
    enum class PwOp { Max, Min, Abs };

    RegulatedFn();   // zero on [0, 1]
    static RegulatedFn step(StepFn s);
    static RegulatedFn poly(PiecewisePoly p);
    static RegulatedFn symbolic(sym::Expr e, Interval dom, std::string name = "",
                                std::string primitive_key = "", int m = 0);
    static RegulatedFn lincomb(std::vector<std::pair<double, RegulatedFn>> terms);
    static RegulatedFn product(RegulatedFn f, RegulatedFn g);
    static RegulatedFn pointwise(PwOp op, RegulatedFn f, std::optional<RegulatedFn> g = std::nullopt);
    static RegulatedFn sampled(GridP grid, std::vector<double> val, std::vector<double> right);
    static RegulatedFn constant(double c, Interval dom);

    Kind kind() const;
    const Interval& domain() const;
    std::string describe() const;

    const StepFn* as_step() const;
    const PiecewisePoly* as_poly() const;
    const SymbolicFn* as_symbolic() const;
    const SampledFn* as_sampled() const;
    const std::vector<std::pair<double, RegulatedFn>>* as_lincomb() const;
    const std::pair<RegulatedFn, RegulatedFn>* as_product() const;
    PwOp pointwise_op() const;
    const std::vector<RegulatedFn>& pointwise_args() const;

    double value(double t) const;
    double operator()(double t) const { return value(t); }
    Val side_value(double t, Side side) const;
    Limits limits(double t) const;
    // enclosure over the open cell (lo, hi)
    Iv enclose(double lo, double hi) const;
    // declared jump/singular points in [lo, hi], sorted and unique
    std::vector<double> break_points(double lo, double hi) const;
    bool exact() const;   // Step or Poly data all the way down
    // exact piecewise polynomial form when exact()
    std::optional<PiecewisePoly> to_poly() const;
    // a primitive (any additive constant) known in closed form, if any
    std::optional<RegulatedFn> closed_primitive() const;

    // label carried into reports, e.g. an exact coefficient expression
    const std::string& label() const;
    RegulatedFn with_label(std::string l) const;

    friend bool identical(const RegulatedFn& f, const RegulatedFn& g);

    struct Impl;
private:
    explicit RegulatedFn(std::shared_ptr<const Impl> p) : p_(std::move(p)) {}
    std::shared_ptr<const Impl> p_;
};

RegulatedFn operator+(const RegulatedFn& f, const RegulatedFn& g);
RegulatedFn operator-(const RegulatedFn& f, const RegulatedFn& g);
RegulatedFn operator*(double c, const RegulatedFn& f);

// sample onto a grid (values plus right limits at break nodes)
RegulatedFn sample(const RegulatedFn& f, const GridP& grid);

// Antiderivative registry: primitive expression of a registered density as a
// function of the series depth m.
struct RegistryEntry {
    std::string key;
    std::function<sym::Expr(int m)> density;
    std::function<sym::Expr(int m)> primitive;
};
const RegistryEntry* registry_lookup(const std::string& key);
void registry_add(RegistryEntry e);
std::vector<std::string> registry_keys();

} // namespace lrp
