#pragma once
#include "lrp/rational.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace lrp {

struct StepPiece {
    Rat x, y, v;   // value v on (x, y]
};

// Exact left-continuous step function on [a, b]: value base_value at a and
// constant values on contiguous left-open cells. Adjacent equal cells are
// merged, so equal functions have equal representations.
class StepFn {
public:
    StepFn() : StepFn(Rat(0), Rat(1), Rat(0)) {}
    StepFn(Rat a, Rat base_value, const std::vector<StepPiece>& pieces);
    StepFn(Rat a, Rat base_value, std::vector<Rat> ends, std::vector<Rat> vals);
    // constant v on [a, b]
    StepFn(Rat a, Rat b, Rat v);
    // chi_(x,y] restricted to [a, b]
    static StepFn indicator(const Rat& a, const Rat& b, const Rat& x, const Rat& y);

    const Rat& lo() const { return a_; }
    const Rat& hi() const { return ends_.back(); }
    const Rat& base_value() const { return base_; }
    size_t size() const { return ends_.size(); }
    const Rat& left(size_t i) const { return i == 0 ? a_ : ends_[i - 1]; }
    const Rat& end(size_t i) const { return ends_[i]; }
    const Rat& val(size_t i) const { return vals_[i]; }
    const std::vector<Rat>& ends() const { return ends_; }
    const std::vector<Rat>& vals() const { return vals_; }
    std::vector<StepPiece> pieces() const;

    bool contains(const Rat& t) const { return a_ <= t && t <= hi(); }
    // index of the cell (left, end] holding t; requires a < t <= b
    size_t cell_of(const Rat& t) const;
    Rat operator()(const Rat& t) const;
    double operator()(double t) const;
    Rat left_limit(const Rat& t) const;                  // base value at a
    std::optional<Rat> right_limit(const Rat& t) const;  // absent at b
    double right_limit_d(double t) const;

    Rat sup_norm() const;
    Rat l1_norm() const;
    Rat alexiewicz_norm() const;
    // max and min values of the cumulative integral (0 at a included)
    std::pair<Rat, Rat> cumulative_extrema() const;
    Rat cumulative(const Rat& t) const;                  // int_a^t
    Rat integral(const Rat& x, const Rat& y) const;      // int_x^y, oriented
    Rat variation() const;                               // includes the jump at a+
    Rat min_value() const;
    Rat max_value() const;

    StepFn map(const std::function<Rat(const Rat&)>& fn) const;
    static StepFn combine(const StepFn& f, const StepFn& g,
                          const std::function<Rat(const Rat&, const Rat&)>& fn);
    StepFn restrict(const Rat& x, const Rat& y) const;
    // pointwise <= including the base point
    bool leq(const StepFn& g) const;

    friend bool operator==(const StepFn& f, const StepFn& g);
    friend StepFn operator+(const StepFn& f, const StepFn& g);
    friend StepFn operator-(const StepFn& f, const StepFn& g);
    friend StepFn operator*(const StepFn& f, const StepFn& g);
    friend StepFn operator*(const Rat& c, const StepFn& f);
    StepFn operator-() const;

private:
    void canonicalize();
    Rat a_, base_;
    std::vector<Rat> ends_, vals_;
    std::vector<double> ends_d_;
};

StepFn join(const StepFn& f, const StepFn& g);
StepFn meet(const StepFn& f, const StepFn& g);
StepFn abs(const StepFn& f);
StepFn pos(const StepFn& f);
StepFn neg(const StepFn& f);

} // namespace lrp
