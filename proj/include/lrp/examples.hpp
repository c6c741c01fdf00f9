#pragma once
#include "lrp/funcspace.hpp"
#include "lrp/regulated.hpp"

#include <map>
#include <string>
#include <vector>

namespace lrp::examples {

// Parameters shared by the function builders.
struct Params {
    int m = 4;          // series truncation depth
    double p = 2;       // exponent of the (1 + nt - floor(nt)) / n^p series
    double a = 0, T = 1;   // domain [a, T]
};

// Series builders on [a, T]. At points where n t is an integer the terms are
// evaluated on their left branch (value as n t -> integer from below).
RegulatedFn cospi_G(const Params& p);      // sum 1/n^2 (2u cos(pi/2u) + pi/2 sin(pi/2u)), u = nt - [nt]
RegulatedFn cospi_F(const Params& p);      // sum u^2/n^3 cos(pi/2u), a primitive of cospi_G
RegulatedFn cospi_sqrt_G(const Params& p);     // cospi_G + sum 1/(2 sqrt u)
RegulatedFn cospi_sqrt_F(const Params& p);     // cospi_F + sum ([nt] + sqrt u)/n
RegulatedFn cospi_lin_G(const Params& p);     // cospi_G + sum (cos(pi/2u) + pi sin(pi/2u)/(2u))
RegulatedFn cospi_lin_F(const Params& p);     // cospi_F + sum u cos(pi/2u)/n
RegulatedFn sawtooth_F(const Params& p);     // sum (1 + nt - floor_left(nt)) / n^p
RegulatedFn t_times_G(const Params& p);  // t * cospi_G
RegulatedFn t_times_Gm(const Params& p); // t * cospi_sqrt_G
RegulatedFn t2_times_Gm(const Params& p);// t^2 * cospi_lin_G
RegulatedFn heaviside(double a = -1, double b = 1);
RegulatedFn shape_a(double T = 1);       // t (1 + cos(1/t)), 0 at 0
RegulatedFn shape_b(double T = 1);       // t (1 - sin(1/t)), 0 at 0
RegulatedFn density_a(double T = 1);     // (1/t) sin(1/t) + cos(1/t) + 1, primitive shape_a
RegulatedFn density_b(double T = 1);     // (1/t) cos(1/t) - sin(1/t) + 1, primitive shape_b
RegulatedFn t_sin_inv(double T = 1);     // t sin(1/t), 0 at 0

// F = sum_{m>=2} (-1)^m chi_(-1/m, -1/(m+1)] on [-1, 0] and its partial sums.
CountableStep alternating_blocks();
StepFn alternating_blocks_partial(long n);

// Names accepted by build_function.
std::vector<std::string> function_names();
RegulatedFn build_function(const std::string& name, const Params& p);

} // namespace lrp::examples
