#pragma once
#include "lrp/rational.hpp"
#include "lrp/step_fn.hpp"

#include <optional>
#include <vector>

namespace lrp {

// Polynomial in t with exact coefficients, ascending powers.
struct Poly {
    std::vector<Rat> c;
    Poly() = default;
    Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const Rat& v) { return Poly({v}); }
    static Poly monomial(const Rat& coef, int k);
    int degree() const { return c.empty() ? -1 : int(c.size()) - 1; }
    Rat operator()(const Rat& t) const;
    double operator()(double t) const;
    Poly antiderivative() const;   // zero constant term
    Poly derivative() const;
    void trim();
    friend Poly operator+(const Poly& p, const Poly& q);
    friend Poly operator-(const Poly& p, const Poly& q);
    friend Poly operator*(const Poly& p, const Poly& q);
    friend Poly operator*(const Rat& s, const Poly& p);
    friend bool operator==(const Poly& p, const Poly& q) { return p.c == q.c; }
};

// Left-continuous piecewise polynomial on [a, b] with exact data; same cell
// layout as StepFn. Closed under +, *, and cumulative integration.
class PiecewisePoly {
public:
    PiecewisePoly(Rat a, Rat base_value, std::vector<Rat> ends, std::vector<Poly> polys);
    PiecewisePoly(Rat a, Rat b, Poly p);   // single polynomial, continuous at a
    explicit PiecewisePoly(const StepFn& s);

    const Rat& lo() const { return a_; }
    const Rat& hi() const { return ends_.back(); }
    const Rat& base_value() const { return base_; }
    size_t size() const { return ends_.size(); }
    const Rat& left(size_t i) const { return i == 0 ? a_ : ends_[i - 1]; }
    const Rat& end(size_t i) const { return ends_[i]; }
    const Poly& poly(size_t i) const { return polys_[i]; }
    const std::vector<Rat>& ends() const { return ends_; }

    Rat operator()(const Rat& t) const;
    double operator()(double t) const;
    std::optional<Rat> right_limit(const Rat& t) const;
    // jump points where left and right values differ (interior), plus a if base differs
    std::vector<Rat> jumps() const;

    PiecewisePoly cumulative() const;                 // int_a^t, continuous
    PiecewisePoly derivative() const;                 // cellwise; jumps dropped
    PiecewisePoly restrict(const Rat& x, const Rat& y) const;
    Rat integral(const Rat& x, const Rat& y) const;   // oriented
    int max_degree() const;
    bool is_step() const { return max_degree() <= 0; }
    StepFn to_step() const;

    static PiecewisePoly combine(const PiecewisePoly& f, const PiecewisePoly& g, int op);  // 0 +, 1 -, 2 *
    friend PiecewisePoly operator+(const PiecewisePoly& f, const PiecewisePoly& g) { return combine(f, g, 0); }
    friend PiecewisePoly operator-(const PiecewisePoly& f, const PiecewisePoly& g) { return combine(f, g, 1); }
    friend PiecewisePoly operator*(const PiecewisePoly& f, const PiecewisePoly& g) { return combine(f, g, 2); }
    friend PiecewisePoly operator*(const Rat& s, const PiecewisePoly& f);
    friend bool operator==(const PiecewisePoly& f, const PiecewisePoly& g);

private:
    size_t cell_of(const Rat& t) const;
    void canonicalize();
    Rat a_, base_;
    std::vector<Rat> ends_;
    std::vector<Poly> polys_;
    std::vector<double> ends_d_;
};

} // namespace lrp
