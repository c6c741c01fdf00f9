#pragma once
#include "lrp/interval.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lrp {

enum class Side { Left, Exact, Right };

// One-sided value in a small limit algebra. Fin carries the value and a
// signed deviation d (value(t0 + side*eps) ~ v + d*eps); dir_known=false
// means the approach direction is lost (e.g. after 0 * oscillation).
struct Val {
    enum class K : unsigned char { Fin, PInf, NInf, Bnd, Undef };
    K k = K::Fin;
    double v = 0, d = 0;
    double lo = 0, hi = 0;
    bool dir_known = true;

    static Val fin(double v, double d = 0, bool dk = true) { Val r; r.v = v; r.d = d; r.dir_known = dk; return r; }
    static Val pinf() { Val r; r.k = K::PInf; return r; }
    static Val ninf() { Val r; r.k = K::NInf; return r; }
    static Val bnd(double lo, double hi);
    static Val undef() { Val r; r.k = K::Undef; return r; }
    bool finite() const { return k == K::Fin && std::isfinite(v); }
};

Val operator+(const Val& a, const Val& b);
Val operator*(const Val& a, const Val& b);
Val operator-(const Val& a);

namespace sym {

enum class Op : unsigned char {
    Const, T, N, Add, Mul, Neg, Recip, Pow, Sqrt, Sin, Cos, Atan, Tanh, Exp, Abs,
    FloorRight, FloorLeft, Heaviside, Series
};

struct Node;
using NodeP = std::shared_ptr<const Node>;

struct Node {
    Op op;
    double c = 0;   // Const value
    int k = 0;      // Pow exponent, Series depth
    NodeP a, b;
};

class Expr {
public:
    Expr() : Expr(0.0) {}
    Expr(double c);
    Expr(int c) : Expr(double(c)) {}
    explicit Expr(NodeP p) : p_(std::move(p)) {}
    const Node& node() const { return *p_; }
    const NodeP& ptr() const { return p_; }
private:
    NodeP p_;
};

Expr t();
Expr n();                    // series index
Expr constant(double c);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr recip(const Expr& a);
Expr pow(const Expr& a, int k);
Expr sqrt(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr atan(const Expr& a);
Expr tanh(const Expr& a);
Expr exp(const Expr& a);
Expr abs(const Expr& a);
Expr floor_right(const Expr& a);   // [z] = m for m <= z < m+1
Expr floor_left(const Expr& a);    // m for m-1 < z <= m
Expr heaviside(const Expr& a);     // 1 for z > 0, else 0
Expr series(const Expr& term, int m);   // sum_{n=1}^m term(n, t)

// Plain evaluation at t. Returns nullopt when t hits a branch point of a
// floor_right node, a pole, or a non-finite intermediate; callers then use
// eval_side.
std::optional<double> eval_fast(const Expr& e, double t);
Val eval_side(const Expr& e, double t, Side side);
// Enclosure of the open cell (lo, hi); for lo == hi, the point value.
Iv enclose(const Expr& e, double lo, double hi);
// Declared break points in [lo, hi]: jumps of floor/Heaviside nodes and zeros
// of reciprocal/sqrt arguments, for arguments affine in t. Sorted, unique.
std::vector<double> break_points(const Expr& e, double lo, double hi);
// Arguments of sin/cos nodes, expanded over series indices (for quadrature probes).
struct TrigArg { NodeP arg; int n; };
std::vector<TrigArg> trig_args(const Expr& e);
double eval_node(const NodeP& p, double t, int n, bool& ok);
std::string to_string(const Expr& e);
bool same(const Expr& a, const Expr& b);   // structural equality

} // namespace sym
} // namespace lrp
