#pragma once
#include "lrp/error.hpp"
#include "lrp/grid.hpp"
#include "lrp/integral.hpp"
#include "lrp/regulated.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lrp {

using FnVec = std::vector<RegulatedFn>;
enum class Direction { Up, Down };
std::string to_string(Direction d);

// x' = f(x), x(a) = c on [a, b). Each map returns the primitive of f_i(x)
// (vanishing at a), so F_i(x) = c_i + phi_i(x).
struct CauchySystem {
    size_t m = 1;
    std::vector<std::function<RegulatedFn(const FnVec&)>> phi;
    std::vector<double> c;
    double a = 0, b = 1;
    bool monotone = true;
    std::vector<double> breaks;   // forced grid nodes
    double ppu = 4096;
    GridP grid;                   // built from a, b, ppu, breaks when empty
    std::string name;

    GridP verification_grid() const;
    void check() const;           // sizes, interval
};

struct SubSuperPair {
    FnVec lower, upper;
};

// One stage of a chain: each component sampled on the grid (value and right
// limit per node) plus its exact label when the iterate has one.
struct Stage {
    std::string label;            // "0", "1", ..., "omega1", ...
    std::vector<std::vector<double>> val, right;
    std::vector<std::string> exact;
};

struct IterationTrace {
    Direction dir = Direction::Up;
    GridP grid;
    std::vector<Stage> stages;
    int stabilization_index = -1; // stage index equal to its predecessor
    int omega_stages = 0;
    bool converged = false;
    double last_diff = 0;
    FnVec result;                 // final iterate
    std::string csv() const;      // stage, t, x1..xm; break nodes get a "t+" row
};

struct ChainOptions {
    double tol = 1e-12;           // grid equality of successive iterates
    int max_steps = 64;           // iterations per stage before an omega-stage
    int max_omega = 8;
    double mono_tol = 1e-12;      // relative slack of the order check
    bool regularize = true;       // left-continuous repair of frozen nodes
    double verify_tol = 1e-9;     // bracket / order checks on returned solutions
};

FnVec apply_operator(const CauchySystem& S, const FnVec& x);

IterationTrace iterate_chain(const CauchySystem& S, const FnVec& start, Direction dir, const ChainOptions& opt = {});

// grid sup of F(y) - y over all components
double fixed_point_residual(const CauchySystem& S, const FnVec& y);

struct Solutions {
    FnVec lower, upper;           // y_*, y^*
    IterationTrace up, down;
    double residual_lower = 0, residual_upper = 0;
    double order_gap = 0;         // max(y_* - y^*) on the grid (<= 0 when ordered)
    double bracket_gap = 0;       // worst excursion outside [y_lo, y_hi]
};
Solutions smallest_greatest(const CauchySystem& S, const SubSuperPair& pair, const ChainOptions& opt = {});

// y_lo = c + int h_lo, y_hi = c + int h_hi; the bounds are spot-checked against
// phi_i(x) at the bracket ends and a few interpolants (OrderBoundError).
SubSuperPair bounds_to_subsuper(const CauchySystem& S, const std::vector<Distribution>& h_lo,
                                const std::vector<Distribution>& h_hi, int spot_checks = 5);

// Q nondecreasing; R = sup{r <= scan_max : r <= Q(r)} must satisfy R = Q(R)
struct L1Config {
    std::function<double(double)> Q;
    double scan_max = 1e3;
    int scan_points = 20001;
    double tol = 1e-9;
    ChainOptions chain;
    int ball_samples = 8;
    unsigned seed = 1;
};
struct L1Result {
    double R = 0;
    SubSuperPair bracket;
    Solutions sol;
};
L1Result minmax_l1(const CauchySystem& S, const L1Config& cfg);
double find_radius(const L1Config& cfg);
double l1_norm_grid(const RegulatedFn& f, const GridP& g);

// t -> max_i |x_i(t)|
RegulatedFn ceil_norm(const FnVec& x);

struct MajorantOp {
    std::function<RegulatedFn(const RegulatedFn&)> G;
    RegulatedFn w0;
    GridP grid;
    std::string name;
};
struct UniqOptions {
    double tol = 1e-9;
    int max_steps = 64;
    int max_omega = 8;
    int stagnation_steps = 3;     // sup-norm not shrinking for this many steps
    double stagnation_ratio = 0.999;
};
struct UniqResult {
    bool certified = false;
    IterationTrace trace;
    double final_sup = 0;
    std::vector<double> stage_sup;   // sup-norm after every stage
};
UniqResult uniqueness_chain(const MajorantOp& M, const UniqOptions& opt = {});

// y^(m) = g(y, ..., y^(m-1)) as the first-order system phi_i = int x_{i+1}
// for i < m and phi_m = g (which supplies a primitive).
CauchySystem reduce_higher_order(int m, std::function<RegulatedFn(const FnVec&)> g, std::vector<double> c,
                                 double a = 0, double b = 1, double ppu = 4096);

// int_a^t f as a RegulatedFn: exact for exact data, trapezoid on the grid else
RegulatedFn primitive_on(const RegulatedFn& f, double a, const GridP& grid);

// sub/super pair of a reduced m-th order problem whose g has primitive
// between lo*t and hi*t: iterated cumulative bounds (exact polynomials)
SubSuperPair higher_order_bounds(int m, const std::vector<double>& c, double lo, double hi, double a, double b);

} // namespace lrp
