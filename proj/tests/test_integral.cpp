#include "lrp/examples.hpp"
#include "lrp/integral.hpp"
#include "lrp/suites.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lrp;
namespace ex = lrp::examples;

namespace {

RegulatedFn polyfn(double a, double b, std::vector<Rat> c) {
    return RegulatedFn::poly(PiecewisePoly(Rat::from_double(a), Rat::from_double(b), Poly(std::move(c))));
}

// Ci(1), Si(1) by their power series
double ci1() {
    double s = 0.5772156649015329, term = 1;
    for (int k = 1; k < 30; ++k) {
        term *= -1.0 / ((2.0 * k - 1) * (2.0 * k));
        s += term / (2.0 * k);
    }
    return s;
}
double si1() {
    double s = 0, term = 1;
    for (int k = 0; k < 30; ++k) {
        if (k > 0) term *= -1.0 / ((2.0 * k) * (2.0 * k + 1));
        s += term / (2.0 * k + 1);
    }
    return s;
}

// int_a^t int_a^s h for a step h, cell by cell
double double_primitive(const StepFn& h, double t) {
    double v = 0;
    for (size_t i = 0; i < h.size(); ++i) {
        double x = h.left(i).to_double(), y = h.end(i).to_double(), c = h.val(i).to_double();
        if (t <= x) break;
        if (t >= y) v += c * (y - x) * (t - 0.5 * (x + y));
        else v += 0.5 * c * (t - x) * (t - x);
    }
    return v;
}

} // namespace

TEST_SUITE("integral") {

TEST_CASE("primitive integral as endpoint evaluation") {
    Distribution f = Distribution::from_primitive(polyfn(0, 1, {Rat(0), Rat(1)}), Space::LR);
    CHECK(primitive_integral(f, 0, 1) == 1);
    CHECK(primitive_integral(Distribution::dirac(), -1, 1) == 1);

    ex::Params p;
    RegulatedFn tG = ex::t_times_G(p);
    Distribution g = Distribution::from_primitive(tG, Space::LR);
    CHECK(primitive_integral(g, 0, 0.5) == tG(0.5));
    CHECK(primitive_integral(g, 0.5, 0) == -tG(0.5));
}

TEST_CASE("cumulative of the Dirac distribution is a shifted heaviside") {
    RegulatedFn c = cumulative(Distribution::dirac(), -1, 0);
    CHECK(c(-1.0) == 0);
    CHECK(c(-0.5) == 0);
    CHECK(c(0.0) == 0);
    CHECK(c(1e-9) == 1);
    CHECK(c(1.0) == 1);
}

TEST_CASE("cumulative with an anchor and an initial value") {
    Distribution f = Distribution::from_primitive(polyfn(0, 2, {Rat(0), Rat(0), Rat(1)}), Space::LR);
    RegulatedFn c = cumulative(f, 1, 5);
    for (double t : {0.0, 0.25, 1.0, 1.5, 2.0}) CHECK(c(t) == doctest::Approx(5 + t * t - 1).epsilon(1e-15));
}

TEST_CASE("iterated cumulative of step data") {
    std::mt19937 rng(7);
    for (int cs = 0; cs < 100; ++cs) {
        StepFn h = suites::random_step(rng, Rat(0), Rat(2), 6, 5);
        RegulatedFn I1 = cumulative(Distribution::from_density(RegulatedFn::step(h)), 0, 0);
        RegulatedFn I2 = cumulative(Distribution::from_density(I1), 0, 0);
        for (int j = 0; j <= 20; ++j) {
            double t = 0.1 * j;
            CHECK(I2(t) == doctest::Approx(double_primitive(h, t)).epsilon(1e-12).scale(1));
        }
    }
}

TEST_CASE("pairing with a bump") {
    TestFn phi{0, 0.5};
    CHECK(phi(0) == 1);
    CHECK(pairing(Distribution::dirac(), phi).value == doctest::Approx(1).epsilon(1e-9));

    RegulatedFn k = RegulatedFn::constant(3, Interval::closed(-1, 1));
    CHECK(std::fabs(pairing(Distribution::from_primitive(k, Space::LR), phi).value) <= 1e-9);

    std::mt19937 rng(11);
    for (int cs = 0; cs < 20; ++cs) {
        StepFn a = suites::random_step(rng, Rat(-1), Rat(1), 5, 4), b = suites::random_step(rng, Rat(-1), Rat(1), 5, 4);
        Distribution fa = Distribution::from_primitive(RegulatedFn::step(a), Space::LL);
        Distribution fb = Distribution::from_primitive(RegulatedFn::step(b), Space::LL);
        Distribution fc = Distribution::from_primitive(RegulatedFn::step(Rat(2) * a - Rat(3) * b), Space::LL);
        TestFn psi{0.1, 0.7};
        double lhs = pairing(fc, psi, 1e-11).value;
        double rhs = 2 * pairing(fa, psi, 1e-11).value - 3 * pairing(fb, psi, 1e-11).value;
        CHECK(std::fabs(lhs - rhs) <= 2e-10);
    }
}

TEST_CASE("Hake limits") {
    Distribution f = Distribution::from_primitive(ex::t_sin_inv(1), Space::LD);
    CHECK(hake(f, HakeSide::LeftEndpoint, 1) == doctest::Approx(std::sin(1.0)).epsilon(1e-12));

    ex::Params p;
    Distribution g = Distribution::from_primitive(ex::t_times_G(p), Space::LR);
    CHECK(std::fabs(hake(g, HakeSide::LeftEndpoint, 1) - primitive_integral(g, 0, 1)) <= 1e-8);

    StepFn s(Rat(0), Rat(2), {Rat(1, 2), Rat(1)}, {Rat(2), Rat(-1)});
    Distribution h = Distribution::from_primitive(RegulatedFn::step(s), Space::LL);
    // F(b-) - F(c) with c = 1/4: the last cell's value minus F(1/4)
    CHECK(hake(h, HakeSide::RightEndpoint, 0.25) == -3);
}

TEST_CASE("integration by parts") {
    RegulatedFn one = RegulatedFn::constant(1, Interval::closed(-1, 1));
    PartsResult a = parts(Distribution::dirac(), Multiplier::from_density(one, -1), -1, 1);
    CHECK(a.value == doctest::Approx(1).epsilon(1e-12));
    CHECK(std::fabs(a.value) <= a.bound);

    Distribution t2 = Distribution::from_primitive(polyfn(0, 1, {Rat(0), Rat(0), Rat(1)}), Space::LR);
    PartsResult b = parts(t2, Multiplier::from_density(RegulatedFn::constant(1, Interval::closed(0, 1)), 0), 0, 1);
    REQUIRE(b.exact);
    CHECK(*b.exact == Rat(2, 3));

    PartsResult c = parts(t2, Multiplier::from_density(RegulatedFn::constant(0, Interval::closed(0, 1)), 0), 0, 1);
    CHECK(c.value == 0);
}

TEST_CASE("product of primitives") {
    StepFn chi = StepFn::indicator(Rat(0), Rat(1), Rat(0), Rat(1));
    Distribution a = Distribution::from_primitive(RegulatedFn::step(chi), Space::LR);
    Distribution pa = product(a, a);
    REQUIRE(pa.primitive.as_step());
    CHECK(*pa.primitive.as_step() == chi);

    Distribution t = Distribution::from_primitive(polyfn(0, 1, {Rat(0), Rat(1)}), Space::LR);
    Distribution tt = product(t, t);
    auto pp = tt.primitive.to_poly();
    REQUIRE(pp);
    CHECK(*pp == PiecewisePoly(Rat(0), Rat(1), Poly({Rat(0), Rat(0), Rat(1)})));
    CHECK(norm(tt.primitive, NormKind::Sup, Interval::closed(0, 1)).value <= 1);
    CHECK_THROWS_AS(product(Distribution::from_primitive(RegulatedFn::step(chi), Space::LL), a), UnsupportedError);
}

TEST_CASE("quadrature of step and oscillatory data") {
    RegulatedFn chi = RegulatedFn::step(StepFn::indicator(Rat(0), Rat(2), Rat(0), Rat(1)));
    CHECK(integrate_regulated(chi, 0, 2, 1e-12).value == 1);

    double JA = 0.5 + 0.5 * std::cos(1.0) - 0.5 * (std::sin(1.0) - ci1());
    double JB = 0.5 - 0.5 * (std::sin(1.0) + std::cos(1.0) - (std::acos(-1.0) / 2 - si1()));
    CHECK(JA == doctest::Approx(0.5181176219806057).epsilon(1e-13));
    QuadResult qa = integrate_regulated(ex::shape_a(1), 0, 1, 1e-10);
    QuadResult qb = integrate_regulated(ex::shape_b(1), 0, 1, 1e-10);
    CHECK(std::fabs(qa.value - JA) <= 1e-10);
    CHECK(std::fabs(qb.value - JB) <= 1e-10);

    QuadResult d = integrate_regulated(ex::density_a(1), 0, 0.3, 1e-10);
    CHECK(std::fabs(d.value - 0.3 * (1 + std::cos(1 / 0.3))) <= 1e-8);
}

}
