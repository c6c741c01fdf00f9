#pragma once
#include "lrp/funcspace.hpp"
#include "lrp/quadrature.hpp"
#include "lrp/regulated.hpp"

#include <optional>
#include <string>

namespace lrp {

// LD: primitive locally HK integrable, LL: locally Lebesgue, LR: locally Riemann.
enum class Space { LD, LL, LR };
std::string to_string(Space s);
Space parse_space(const std::string& s);

// A distribution is carried only through its left-continuous primitive.
struct Distribution {
    RegulatedFn primitive;
    Space tag = Space::LD;
    bool normalized = false;   // primitive(inf I+) == 0

    const Interval& domain() const { return primitive.domain(); }

    // the tag must be consistent with classify(F); LR/LL claims are checked
    static Distribution from_primitive(RegulatedFn F, Space tag, bool normalize = false);
    // tag from classify, widest space when the classification is uncertain
    static Distribution from_primitive_auto(RegulatedFn F, bool normalize = false);
    // the distribution of a function h: primitive x -> int_a^x h
    static Distribution from_density(const RegulatedFn& h, Space tag = Space::LR);
    static Distribution dirac(double a = -1, double b = 1);   // primitive H1
};

// Endpoints: with left-continuous primitives the canonical integral
// over [a, b] is the one over [a, b). The other three are available.
enum class Endpoints { LeftClosed, Open, Closed, RightClosed };

// F(b) - F(a) for the canonical mode; oriented (b < a gives the negative).
double primitive_integral(const Distribution& f, double a, double b, Endpoints mode = Endpoints::LeftClosed);
// exact variant for exact primitives
Rat primitive_integral_exact(const Distribution& f, const Rat& a, const Rat& b);

// G(x) = c + int_a^x f, a RegulatedFn on the domain of f
RegulatedFn cumulative(const Distribution& f, double a, double c);

// exp(1 - 1/(1 - s^2)), s = (t - center) / radius, so phi(center) = 1
struct TestFn {
    double center = 0, radius = 1;
    double operator()(double t) const;
    double derivative(double t) const;
    double lo() const { return center - radius; }
    double hi() const { return center + radius; }
};

// <f, phi> = -int F phi'
QuadResult pairing(const Distribution& f, const TestFn& phi, double tol = 1e-10);

enum class HakeSide { LeftEndpoint, RightEndpoint };
// left: lim_{x->a+} int_x^c f = F(c) - F(a+); right: lim_{x->b-} int_c^x f = F(b-) - F(c)
double hake(const Distribution& f, HakeSide side, double c);

// g(x) = int_c^x h for a bounded density h
struct Multiplier {
    double anchor = 0;
    RegulatedFn density;
    RegulatedFn g;            // its values
    double sup_h = 0;         // ||h||_inf, the Lipschitz constant of g
    double var_h = 0;         // V h
    double var_g = 0;         // V g = ||h||_1
    bool exact = false;
    std::optional<Rat> sup_h_exact, var_h_exact, var_g_exact;

    static Multiplier from_density(RegulatedFn h, double anchor);
    double operator()(double x) const { return g.value(x); }
};

struct PartsResult {
    double value = 0;
    double bound = 0;
    std::optional<Rat> exact;
    double error = 0;         // quadrature error of int F h
};

// int_a^b f g := F(b) g(b) - int_a^b F h, with F renormalised to vanish at a.
// LD bound |F(b)||g(b)| + ||F||_A (||h||_inf + Vh); LL bound |F(b)||g(b)| + ||F||_1 ||h||_inf.
PartsResult parts(const Distribution& f, const Multiplier& g, double a, double b, double tol = 1e-12);

// product in the LR algebra: primitive F G
Distribution product(const Distribution& f, const Distribution& g);

// f <= g in the primitive order, checked on exact data or on n samples
bool primitive_leq(const Distribution& f, const Distribution& g, size_t samples = 2001);

} // namespace lrp
