#include "lrp/examples.hpp"
#include "lrp/funcspace.hpp"

#include <doctest.h>

#include <cmath>

using namespace lrp;
namespace ex = lrp::examples;

namespace {

RegulatedFn step(StepFn s) { return RegulatedFn::step(std::move(s)); }
RegulatedFn poly01(std::vector<Rat> c) { return RegulatedFn::poly(PiecewisePoly(Rat(0), Rat(1), Poly(std::move(c)))); }

// term n of the cospi series, left branch: u -> 1 as n t approaches an integer from below
double cospi_term(int n, double t) {
    double z = n * t, u = z - std::floor(z);
    if (u == 0 && z > 0) u = 1;
    if (u == 0) return 0;
    const double pi = std::acos(-1.0);
    return (2 * u * std::cos(pi / (2 * u)) + pi / 2 * std::sin(pi / (2 * u))) / (double(n) * n);
}

} // namespace

TEST_SUITE("funcspace") {

TEST_CASE("limits of the heaviside function at its jump") {
    RegulatedFn H = ex::heaviside();
    Limits l = H.limits(0);
    REQUIRE(l.left);
    REQUIRE(l.right);
    CHECK(*l.left == 0);
    CHECK(l.value == 0);
    CHECK(*l.right == 1);
    CHECK_FALSE(H.limits(-1).left);   // domain minimum
}

TEST_CASE("limits of an indicator at its left end") {
    RegulatedFn chi = step(StepFn::indicator(Rat(0), Rat(1), Rat(1, 2), Rat(1)));
    Limits l = chi.limits(0.5);
    CHECK(*l.left == 0);
    CHECK(l.value == 0);
    CHECK(*l.right == 1);
}

TEST_CASE("truncated cospi series takes the left branch at break points") {
    ex::Params p;
    p.m = 3;
    RegulatedFn G = ex::cospi_G(p);
    double oracle = 0;
    for (int n = 1; n <= 3; ++n) oracle += cospi_term(n, 0.5);
    const double pi = std::acos(-1.0);
    CHECK(oracle == doctest::Approx(-1 + pi / 8 - 1.0 / 9).epsilon(1e-14));
    CHECK(G(0.5) == doctest::Approx(oracle).epsilon(1e-13));
    Limits l = G.limits(0.5);
    REQUIRE(l.left);
    CHECK(*l.left == doctest::Approx(G(0.5 - 1e-8)).epsilon(1e-6));
    CHECK(*l.left == doctest::Approx(l.value).epsilon(1e-13));
    // n = 2 restarts at u = 0+, where sin(pi / 2u) oscillates: no right limit
    CHECK_FALSE(l.right);
    Limits l3 = G.limits(1.0 / 3);   // n = 3 restarts there
    CHECK_FALSE(l3.right);
}

TEST_CASE("step approximation of step data is the data itself") {
    StepFn s(Rat(0), Rat(1), {Rat(1, 3), Rat(1, 2), Rat(1)}, {Rat(1), Rat(1), Rat(-2)});
    for (int n : {1, 7, 64}) {
        StepApprox a = step_approximation(step(s), n, Interval::closed(0, 1));
        REQUIRE(a.exact);
        CHECK(*a.exact == s);
        CHECK(a.exact->size() == 2);   // equal neighbours merged
    }
}

TEST_CASE("step approximation of t with n = 10") {
    StepApprox a = step_approximation(poly01({Rat(0), Rat(1)}), 10, Interval::closed(0, 1));
    REQUIRE(a.step.size() == 10);
    for (size_t k = 0; k < 10; ++k) {
        CHECK(a.step.ends[k] == doctest::Approx((k + 1) / 10.0).epsilon(1e-12));
        CHECK(a.step.vals[k] == doctest::Approx((k + 1) / 10.0).epsilon(1e-12));
    }
    double worst = 0;
    for (int j = 0; j <= 1000; ++j) worst = std::max(worst, std::fabs(a.step(j / 1000.0) - j / 1000.0));
    CHECK(worst <= 0.1 + 1e-15);
}

TEST_CASE("step approximation of sawtooth_F at level 20") {
    ex::Params p;
    p.m = 5;
    p.p = 2;
    RegulatedFn F = ex::sawtooth_F(p);
    StepApprox a = step_approximation(F, 20, Interval::closed(0, 1));
    double worst = 0;
    for (int j = 1; j <= 10000; ++j) worst = std::max(worst, std::fabs(a.step(j / 10000.0) - F(j / 10000.0)));
    CHECK(worst <= 1.0 / 20);
}

TEST_CASE("lattice operations on simple data") {
    StepFn chi = StepFn::indicator(Rat(0), Rat(1), Rat(0), Rat(1));
    CHECK(join(chi, -chi) == chi);
    CHECK(meet(chi, -chi) == -chi);

    RegulatedFn m = meet(poly01({Rat(0), Rat(1)}), poly01({Rat(1), Rat(-1)}));
    CHECK(m(0.5) == doctest::Approx(0.5));
    for (int j = 0; j <= 100; ++j) CHECK(m(j / 100.0) == doctest::Approx(std::min(j / 100.0, 1 - j / 100.0)));

    StepFn s(Rat(0), Rat(-2), {Rat(1, 3), Rat(2, 3), Rat(1)}, {Rat(-2), Rat(3), Rat(-1)});
    StepFn as = abs(s);
    REQUIRE(as.size() == 3);
    CHECK(as.val(0) == Rat(2));
    CHECK(as.val(1) == Rat(3));
    CHECK(as.val(2) == Rat(1));
    CHECK(pos(s) - neg(s) == s);
    CHECK(pos(s) + neg(s) == as);
}

TEST_CASE("Alexiewicz norm of a sign change peaks at the switch") {
    StepFn f(Rat(0), Rat(1), {Rat(1), Rat(2)}, {Rat(1), Rat(-1)});
    CHECK(norm_exact(f, NormKind::Alexiewicz) == Rat(1));
    CHECK(norm_exact(f, NormKind::L1) == Rat(2));
    CHECK(norm_exact(f, NormKind::Sup) == Rat(1));
}

TEST_CASE("alternating block tails have exact norms") {
    CountableStep F = ex::alternating_blocks();
    for (long n = 1; n <= 50; ++n) {
        CountableStep d = F.minus(ex::alternating_blocks_partial(n));
        CHECK(norm_exact(d, NormKind::Alexiewicz) == Rat(1, n + 1) - Rat(1, n + 2));
        CHECK(norm_exact(d, NormKind::L1) == Rat(1, n + 1));
    }
}

TEST_CASE("local metric") {
    Rat N(64);
    StepFn zero(Rat(0), N, Rat(0));
    StepFn chi = StepFn::indicator(Rat(0), N, Rat(0), Rat(1));
    std::vector<Interval> ex;
    for (int n = 1; n <= 64; ++n) ex.push_back(Interval::closed(0, n));
    MetricValue same = local_metric(step(chi), step(chi), NormKind::Sup, ex, 16);
    CHECK(same.value == 0);
    double prev = -1;
    for (size_t depth : {1, 2, 4, 8, 16}) {
        MetricValue v = local_metric(step(chi), step(zero), NormKind::Sup, ex, depth);
        CHECK(v.value == doctest::Approx(0.5 * double(depth)).epsilon(1e-14));
        CHECK(v.value > prev);
        prev = v.value;
    }
}

TEST_CASE("classification of the series examples") {
    ex::Params p;
    Interval J = Interval::closed(0, 1);
    Classification a = classify(ex::t_times_G(p), J);
    CHECK(a.locally_riemann);
    Classification b = classify(ex::cospi_sqrt_G(p), J);
    CHECK_FALSE(b.locally_riemann);
    CHECK(b.locally_lebesgue);
    Classification c = classify(ex::t2_times_Gm(p), J);
    CHECK_FALSE(c.locally_lebesgue);
    CHECK(c.locally_hk);
}

TEST_CASE("finite difference checks") {
    RegulatedFn F = poly01({Rat(0), Rat(0), Rat(1)}), G = poly01({Rat(0), Rat(2)});
    FdReport r = fd_derivative_check(F, G, {0.7}, 1e-3);
    CHECK(r.max_deviation <= 1e-8);

    ex::Params p;
    std::vector<double> pts;
    for (int k = 1; k <= 20; ++k) {
        double x = k * 0.6180339887498949;
        pts.push_back(x - std::floor(x));
    }
    FdReport r1 = fd_derivative_check(ex::cospi_F(p), ex::cospi_G(p), pts, 1e-3);
    CHECK(r1.checked == 20);
    CHECK(r1.max_deviation <= 1e-6);

    p.m = 2;
    FdReport r2 = fd_derivative_check(ex::cospi_lin_F(p), ex::cospi_lin_G(p), {std::sqrt(2.0) / 2}, 1e-3);
    CHECK(r2.max_deviation <= 1e-6);
}

}
