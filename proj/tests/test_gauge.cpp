#include "lrp/examples.hpp"
#include "lrp/gauge.hpp"
#include "lrp/suites.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lrp;

namespace {

RegulatedFn poly01(std::vector<Rat> c) { return RegulatedFn::poly(PiecewisePoly(Rat(0), Rat(1), Poly(std::move(c)))); }

} // namespace

TEST_SUITE("gauge") {

TEST_CASE("constant width gauge gives uniform cells") {
    LeftPartition P = fine_partition(LeftGauge::constant(0.25), 0, 1);
    P.validate();
    REQUIRE(P.cells.size() == 4);
    for (size_t k = 0; k < 4; ++k) {
        CHECK(P.cells[k].x == doctest::Approx(0.25 * k));
        CHECK(P.cells[k].y == doctest::Approx(0.25 * (k + 1)));
        CHECK(P.cells[k].tag == P.cells[k].y);
    }
    CHECK(P.fine(LeftGauge::constant(0.25)));
}

TEST_CASE("shrinking gauge overflows toward the left end") {
    bool thrown = false;
    try {
        fine_partition(LeftGauge::width([](double y) { return y / 2; }), 0, 1, 64);
    } catch (const PartitionOverflow& e) {
        thrown = true;
        CHECK(e.partial.cells.size() == 64);
        CHECK_FALSE(e.partial.complete);
        CHECK(e.partial.residual_hi > 0);
        CHECK(e.partial.residual_hi < 1e-10);
        e.partial.validate();
    }
    CHECK(thrown);
}

TEST_CASE("table gauge") {
    LeftPartition P = fine_partition(LeftGauge::table({{0, 1.0 / 3}, {1.0 / 3, 2.0 / 3}, {2.0 / 3, 1}}), 0, 1);
    REQUIRE(P.cells.size() == 3);
    CHECK(P.cells[0].y == doctest::Approx(1.0 / 3));
    CHECK(P.cells[1].y == doctest::Approx(2.0 / 3));
}

TEST_CASE("interval measures") {
    CHECK(mu_interval(examples::heaviside(), -0.5, 0.5) == 1);
    RegulatedFn t = poly01({Rat(0), Rat(1)});
    CHECK(mu_interval(t, 0.2, 0.7) == doctest::Approx(0.5));
    CHECK(mu_interval_exact(t, Rat(1, 5), Rat(7, 10)) == Rat(1, 2));

    // jump 2 at 1/3: (x, 1/3] picks it up through g(1/3+)
    StepFn s(Rat(0), Rat(0), {Rat(1, 3), Rat(1)}, {Rat(0), Rat(2)});
    RegulatedFn g = RegulatedFn::step(s);
    CHECK(mu_interval_exact(g, Rat(0), Rat(1, 3)) == Rat(2));
    CHECK(mu_interval_exact(g, Rat(1, 3), Rat(1)) == Rat(0));
    CHECK(mu_interval_exact(g, Rat(0), Rat(1, 6)) + mu_interval_exact(g, Rat(1, 6), Rat(1, 3)) == Rat(2));
    // g(b+) := g(b)
    CHECK(mu_interval_exact(g, Rat(1, 2), Rat(1)) == Rat(0));
}

TEST_CASE("Stieltjes examples") {
    RegulatedFn one = RegulatedFn::step(StepFn(Rat(0), Rat(1), Rat(1)));
    RegulatedFn t = poly01({Rat(0), Rat(1)});
    StieltjesResult a = stieltjes(one, t, 0, 1);
    REQUIRE(a.exact);
    CHECK(*a.exact == Rat(1));

    RegulatedFn H = examples::heaviside();
    RegulatedFn chi = RegulatedFn::step(StepFn::indicator(Rat(-1), Rat(1), Rat(0), Rat(1, 2)));
    StieltjesResult b = stieltjes(chi, H, -1, 1);
    CHECK(b.value == 0);
    // measure-sum cross-check: sum a_i mu_H(I_i) over chi's cells
    double ms = 0 * mu_interval(H, -1, 0) + 1 * mu_interval(H, 0, 0.5) + 0 * mu_interval(H, 0.5, 1);
    CHECK(b.value == ms);
    RegulatedFn chi2 = RegulatedFn::step(StepFn::indicator(Rat(-1), Rat(1), Rat(-1), Rat(1, 2)));
    CHECK(stieltjes(chi2, H, -1, 1).value == 1);

    StepFn s(Rat(0), Rat(1), {Rat(1, 3), Rat(2, 3), Rat(1)}, {Rat(1), Rat(-2), Rat(3)});
    RegulatedFn t2 = poly01({Rat(0), Rat(0), Rat(1)});
    StieltjesResult c = stieltjes(RegulatedFn::step(s), t2, 0, 1);
    REQUIRE(c.exact);
    CHECK(*c.exact == Rat(1) * Rat(1, 9) + Rat(-2) * Rat(3, 9) + Rat(3) * Rat(5, 9));
}

TEST_CASE("tagged sums") {
    RegulatedFn t = poly01({Rat(0), Rat(1)});
    RegulatedFn c = RegulatedFn::step(StepFn(Rat(0), Rat(1), Rat(5, 2)));
    LeftPartition P = fine_partition(LeftGauge::constant(0.3), 0, 1);
    StieltjesResult s = stieltjes_sum(c, t, P);
    CHECK(s.value == doctest::Approx(2.5).epsilon(1e-15));

    double prev_err = 1;
    for (int n : {4, 16, 64, 256}) {
        LeftPartition Q = fine_partition(LeftGauge::constant(1.0 / n), 0, 1);
        double v = stieltjes_sum(t, t, Q).value;   // right-end tags: 1/2 + 1/(2n)
        double err = std::fabs(v - 0.5);
        CHECK(err <= 1.0 / n);
        CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("sum bound by sup norm times variation") {
    std::mt19937 rng(3);
    for (int cs = 0; cs < 200; ++cs) {
        StepFn F = suites::random_step(rng, Rat(0), Rat(1), 6, 5), g = suites::random_step(rng, Rat(0), Rat(1), 6, 5);
        RegulatedFn Fr = RegulatedFn::step(F), gr = RegulatedFn::step(g);
        LeftPartition P = fine_partition(LeftGauge::constant(1.0 / (1 + cs % 9)), 0, 1);
        StieltjesResult s = stieltjes_sum(Fr, gr, P);
        REQUIRE(s.exact);
        CHECK(abs(*s.exact) <= F.sup_norm() * variation(gr, 0, 1).exact.value());
        StieltjesResult e = stieltjes_exact(Fr, gr, Rat(0), Rat(1));
        CHECK(abs(*e.exact) <= F.sup_norm() * variation(gr, 0, 1).exact.value());
    }
}

TEST_CASE("variation") {
    CHECK(variation(poly01({Rat(0), Rat(0), Rat(1)}), 0, 1).value == doctest::Approx(1));
    RegulatedFn H = RegulatedFn::step(StepFn::indicator(Rat(-1), Rat(1), Rat(0), Rat(1)));
    CHECK(*variation(H, -1, 1).exact == Rat(1));
    // symbolic integrators need their variation supplied
    CHECK_THROWS_AS(variation(examples::heaviside(), -1, 1), VariationError);
}

}
