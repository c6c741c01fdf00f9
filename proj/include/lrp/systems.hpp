#pragma once
#include "lrp/examples.hpp"
#include "lrp/solver.hpp"

#include <string>
#include <variant>
#include <vector>

namespace lrp::systems {

// ---- two-component quantized system on [0, 1] ----
struct Osc2Params {
    double quad_tol = 1e-10;
    double ppu = 4096;
    std::string g1 = "t_sin_inv", g2 = "heaviside";   // G_1, G_2 (G_i(0) = 0)
    double bound = 4;                                 // bracket G_i -+ bound * shape_i
    examples::Params fn;                              // parameters of G_i builders
};

struct Osc2 {
    CauchySystem S;
    double J_A = 0, J_B = 0;           // int_0^1 of the two shapes
    double err_A = 0, err_B = 0;
    RegulatedFn G1, G2, A, B;          // A = t(1 + cos(1/t)), B = t(1 - sin(1/t))
    SubSuperPair bracket;
};
Osc2 osc2(const Osc2Params& p = {});

// one coefficient update, both paths use it: floor(factor * I)
long osc2_quantize(double I, double factor);
// exact name of atan / tanh of k/10^4, e.g. "arctan(2569/2500)", "-tanh(12421/10000)"
std::string coef_name(const char* fn, long k);

struct ScalarChain {
    std::vector<std::pair<long, long>> k;   // quantized numerators per stage (stage 0: none)
    std::vector<std::pair<double, double>> q;
    int stabilization_index = -1;
};
// q1 <- atan([1e5 q2 J_B] 1e-4), q2 <- tanh([3e4 q1 J_A] 1e-4)
ScalarChain osc2_scalar(double J_A, double J_B, double q1, double q2, int max_steps = 100);

struct Osc2Report {
    double J_A = 0, J_B = 0, err_A = 0, err_B = 0;
    ScalarChain scalar_lower, scalar_upper;
    IterationTrace up, down;
    std::string lower1, lower2, upper1, upper2;   // exact coefficient names
    long kl1 = 0, kl2 = 0, ku1 = 0, ku2 = 0;      // quantized numerators
    double residual_lower = 0, residual_upper = 0;
    bool paths_agree = false;
    double seconds = 0;
};
Osc2Report run_osc2(const Osc2Params& p = {}, const ChainOptions& opt = {});

// ---- the piecewise operator on [0, T] with H on [0, 1] ----
// H given as an exact polynomial on [0, 1]
struct QuadstepParams {
    Poly H = Poly({Rat(0), Rat(0), Rat(1)});
    int T = 5;
    double ppu = 4096;
};
CauchySystem quadstep(const QuadstepParams& p = {});
RegulatedFn quadstep_closed_form(const QuadstepParams& p = {});
SubSuperPair quadstep_bracket(const QuadstepParams& p = {});
// the majorant envelope operator on [0, T], w0 built from u (default u = 1)
MajorantOp quadstep_majorant(int T = 3, double ppu = 4096, std::optional<RegulatedFn> u = std::nullopt);
ChainOptions quadstep_chain_options();

// ---- x' = tanh(x - t) + 1, x(0) = 0 on [0, T]; solution t ----
CauchySystem l1minmax(double T = 1, double ppu = 4096);
L1Config l1minmax_config(double T = 1);

// ---- weighted family F_i(x) = sum_j H_ij(t) int_0^t (k_ij tanh(x_j) + d_ij) + G_i ----
struct Weighted {
    size_t m = 2;
    std::vector<std::vector<RegulatedFn>> H;     // nonnegative weights
    std::vector<std::vector<double>> kappa;      // >= 0: monotone
    std::vector<std::vector<RegulatedFn>> d;     // forcing densities
    std::vector<RegulatedFn> G;
    std::vector<double> c;
    double a = 0, b = 1, ppu = 1024;
};
CauchySystem weighted(const Weighted& w);
// bracket from |tanh| <= 1: primitives of d -+ kappa weighted by H
SubSuperPair weighted_bracket(const Weighted& w);
// d_ij, kappa_ij and the weights from a seed
Weighted random_weighted(unsigned seed, size_t m = 2, double ppu = 512);
// a second system with f <= f' and c <= c' (nonnegative forcing added)
Weighted dominate(const Weighted& w, unsigned seed);

// Phi_i(x) = P_i independent of x
CauchySystem constant_system(std::vector<RegulatedFn> P, std::vector<double> c, double a, double b, double ppu = 1024);

// names understood by build_example
using Example = std::variant<RegulatedFn, CauchySystem, MajorantOp>;
std::vector<std::string> example_names();
Example build_example(const std::string& name, const examples::Params& p);

} // namespace lrp::systems
