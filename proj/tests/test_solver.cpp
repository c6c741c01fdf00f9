#include "lrp/kernels.hpp"
#include "lrp/solver.hpp"
#include "lrp/systems.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lrp;

namespace {

const Interval I01 = Interval::closed(0, 1);

RegulatedFn konst(double c) { return RegulatedFn::constant(c, I01); }
RegulatedFn tpoly(std::vector<Rat> c) { return RegulatedFn::poly(PiecewisePoly(Rat(0), Rat(1), Poly(std::move(c)))); }

double grid_dev(const RegulatedFn& f, const std::function<double(double)>& ref, const GridP& g) {
    double e = 0;
    for (double t : g->t) e = std::max(e, std::fabs(f(t) - ref(t)));
    return e;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("operators independent of x") {
    CauchySystem S = systems::constant_system({konst(0), konst(0)}, {1, 2}, 0, 1, 64);
    FnVec y = apply_operator(S, {konst(-3), konst(7)});
    CHECK(grid_dev(y[0], [](double) { return 1.0; }, S.verification_grid()) == 0);
    CHECK(grid_dev(y[1], [](double) { return 2.0; }, S.verification_grid()) == 0);

    SubSuperPair pair{{konst(0), konst(0)}, {konst(5), konst(5)}};
    Solutions sol = smallest_greatest(S, pair);
    CHECK(sol.up.converged);
    CHECK(sol.down.converged);
    CHECK(sol.up.stabilization_index == 2);   // start, c + Phi, repeat
    CHECK(sol.up.stages.size() == 3);
    CHECK(grid_dev(sol.lower[1], [](double) { return 2.0; }, S.verification_grid()) == 0);
    CHECK(grid_dev(sol.upper[0], [](double) { return 1.0; }, S.verification_grid()) == 0);

    CauchySystem T = systems::constant_system({tpoly({Rat(0), Rat(1)})}, {0}, 0, 1, 64);
    FnVec z = apply_operator(T, {konst(9)});
    CHECK(grid_dev(z[0], [](double t) { return t; }, T.verification_grid()) == 0);
}

TEST_CASE("start at the fixed point stabilizes after one step") {
    CauchySystem S = systems::constant_system({tpoly({Rat(0), Rat(1)})}, {0}, 0, 1, 64);
    IterationTrace tr = iterate_chain(S, {tpoly({Rat(0), Rat(1)})}, Direction::Up);
    CHECK(tr.converged);
    CHECK(tr.stages.size() == 2);
    CHECK(tr.stabilization_index == 1);
}

TEST_CASE("x/2 + 1 is closed by an omega stage") {
    CauchySystem S;
    S.m = 1;
    S.a = 0;
    S.b = 1;
    S.c = {0};
    S.ppu = 16;
    S.grid = Grid::uniform(0, 1, 16);
    S.phi = {[](const FnVec& x) { return 0.5 * x[0] + konst(1); }};
    // 2 - 2^(1-n): within the grid tolerance after about 40 steps
    IterationTrace plain = iterate_chain(S, {konst(0)}, Direction::Up);
    CHECK(plain.converged);
    CHECK(plain.omega_stages == 0);
    CHECK(plain.stages.size() > 30);
    CHECK(grid_dev(plain.result[0], [](double) { return 2.0; }, S.grid) <= 1e-9);

    ChainOptions o;
    o.max_steps = 8;
    IterationTrace tr = iterate_chain(S, {konst(0)}, Direction::Up, o);
    CHECK(tr.converged);
    CHECK(tr.omega_stages >= 1);
    CHECK(tr.stages.size() < plain.stages.size());
    CHECK(grid_dev(tr.result[0], [](double) { return 2.0; }, S.grid) <= 1e-9);
    // iterates increase
    for (size_t s = 1; s < tr.stages.size(); ++s)
        for (size_t k = 0; k < S.grid->size(); ++k) CHECK(tr.stages[s].val[0][k] >= tr.stages[s - 1].val[0][k]);
}

TEST_CASE("zero bounds give the initial values") {
    CauchySystem S = systems::constant_system({konst(0), konst(0)}, {1, -2}, 0, 1, 64);
    Distribution z = Distribution::from_density(konst(0));
    SubSuperPair p = bounds_to_subsuper(S, {z, z}, {z, z});
    CHECK(grid_dev(p.lower[0], [](double) { return 1.0; }, S.verification_grid()) == 0);
    CHECK(grid_dev(p.upper[1], [](double) { return -2.0; }, S.verification_grid()) == 0);
    Solutions sol = smallest_greatest(S, p);
    CHECK(grid_dev(sol.lower[1], [](double) { return -2.0; }, S.verification_grid()) == 0);
}

TEST_CASE("raising initial values raises the smallest solution") {
    systems::Weighted w = systems::random_weighted(5);
    systems::Weighted v = w;
    for (double& c : v.c) c += 0.25;
    Solutions a = smallest_greatest(systems::weighted(w), systems::weighted_bracket(w));
    Solutions b = smallest_greatest(systems::weighted(v), systems::weighted_bracket(v));
    CauchySystem S = systems::weighted(w);
    for (size_t i = 0; i < w.m; ++i)
        for (double t : S.verification_grid()->t) CHECK(a.lower[i](t) <= b.lower[i](t) + 1e-9);
    CHECK(a.order_gap <= 1e-9);
    CHECK(a.residual_lower <= 1e-9);
}

TEST_CASE("ceiling norm") {
    FnVec x{tpoly({Rat(0), Rat(1)}), tpoly({Rat(0), Rat(-1)})};
    RegulatedFn c = ceil_norm(x);
    for (int j = 0; j <= 10; ++j) CHECK(c(j / 10.0) == doctest::Approx(j / 10.0));

    RegulatedFn a = RegulatedFn::step(StepFn::indicator(Rat(0), Rat(1), Rat(0), Rat(1)));
    RegulatedFn b = RegulatedFn::step(Rat(2) * StepFn::indicator(Rat(0), Rat(1), Rat(1, 2), Rat(1)));
    RegulatedFn d = ceil_norm({a, b});
    REQUIRE(d.as_step());
    CHECK(*d.as_step() == StepFn(Rat(0), Rat(0), {Rat(1, 2), Rat(1)}, {Rat(1), Rat(2)}));

    RegulatedFn z = RegulatedFn::step(StepFn(Rat(0), Rat(1), Rat(0)));
    CHECK(ceil_norm({z, z}).as_step()->max_value() == 0);
    CHECK(ceil_norm({z, a}).as_step()->max_value() == 1);
}

TEST_CASE("uniqueness chains") {
    MajorantOp half;
    half.grid = Grid::uniform(0, 1, 32);
    half.w0 = konst(1);
    half.G = [](const RegulatedFn& u) { return 0.5 * u; };
    UniqResult r = uniqueness_chain(half);
    CHECK(r.certified);
    CHECK(r.final_sup <= 1e-9);
    // about log2(1e9) halvings before the chain is within tolerance of zero
    CHECK(r.trace.stages.size() >= 30);

    MajorantOp id = half;
    id.G = [](const RegulatedFn& u) { return u; };
    UniqResult s = uniqueness_chain(id);
    CHECK_FALSE(s.certified);
    CHECK(s.final_sup == doctest::Approx(1));
}

TEST_CASE("majorant envelopes vanish on growing prefixes") {
    MajorantOp M = systems::quadstep_majorant(3, 512);
    UniqResult r = uniqueness_chain(M);
    CHECK(r.certified);
    std::vector<double> prefix;
    for (const Stage& st : r.trace.stages) {
        if (st.label.rfind("omega", 0) != 0) continue;
        size_t k = 0;
        while (k < M.grid->size() && st.val[0][k] <= 1e-9) ++k;
        prefix.push_back(M.grid->t[k - 1]);
    }
    REQUIRE(prefix.size() >= 2);
    CHECK(prefix[0] == doctest::Approx(1));
    CHECK(prefix[1] == doctest::Approx(2));
}

TEST_CASE("higher-order reduction") {
    auto zero = [](const FnVec&) { return konst(0); };
    CauchySystem S = reduce_higher_order(2, zero, {1, 2}, 0, 1, 256);
    Solutions a = smallest_greatest(S, higher_order_bounds(2, {1, 2}, 0, 0, 0, 1));
    CHECK(grid_dev(a.lower[0], [](double t) { return 1 + 2 * t; }, S.grid) <= 1e-9);
    CHECK(grid_dev(a.upper[0], [](double t) { return 1 + 2 * t; }, S.grid) <= 1e-9);

    const double k = 3;
    RegulatedFn kt = tpoly({Rat(0), Rat(3)});
    CauchySystem T = reduce_higher_order(2, [kt](const FnVec&) { return kt; }, {0, 0}, 0, 1, 256);
    Solutions b = smallest_greatest(T, higher_order_bounds(2, {0, 0}, k, k, 0, 1));
    CHECK(grid_dev(b.lower[0], [k](double t) { return k * t * t / 2; }, T.grid) <= 1e-9);
    CHECK(grid_dev(b.upper[0], [k](double t) { return k * t * t / 2; }, T.grid) <= 1e-9);
}

TEST_CASE("Quadstep fixed point") {
    systems::QuadstepParams p;
    p.ppu = 256;
    CauchySystem S = systems::quadstep(p);
    Solutions sol = smallest_greatest(S, systems::quadstep_bracket(p), systems::quadstep_chain_options());
    auto y = [](double t) { return t <= 1 ? -t : -1 + std::ceil(t - 1) * (std::ceil(t - 1) + 1) / 2; };
    CHECK(grid_dev(sol.lower[0], y, S.grid) <= 1e-9);
    CHECK(grid_dev(sol.upper[0], y, S.grid) <= 1e-9);
    CHECK(systems::quadstep_closed_form(p)(1.0) == -1);
}

TEST_CASE("minmax with a radius") {
    CauchySystem P = systems::l1minmax(1, 256);
    L1Result r = minmax_l1(P, systems::l1minmax_config());
    CHECK(grid_dev(r.sol.lower[0], [](double t) { return t; }, P.grid) <= 1e-9);
    CHECK(grid_dev(r.sol.upper[0], [](double t) { return t; }, P.grid) <= 1e-9);
}

}

TEST_SUITE("kernels") {

TEST_CASE("scalar and vector kernels agree bit for bit") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-5, 5);
    for (size_t n : {0, 1, 3, 4, 5, 17, 1000, 4097}) {
        std::vector<double> a(n), b(n), c(n), d(n), o1(n), o2(n);
        for (size_t i = 0; i < n; ++i) {
            a[i] = U(rng);
            b[i] = a[i] + std::fabs(U(rng));
            c[i] = b[i] + std::fabs(U(rng)) * (i % 3 == 0 ? 0 : 1);
            d[i] = c[i] + std::fabs(U(rng)) * 1e-3;
        }
        CHECK(simd::scalar::max_abs_diff(a.data(), b.data(), n) == simd::max_abs_diff(a.data(), b.data(), n));
        CHECK(simd::scalar::max_abs(a.data(), n) == simd::max_abs(a.data(), n));
        if (n) CHECK(simd::scalar::max_violation(a.data(), b.data(), n) == simd::max_violation(a.data(), b.data(), n));
        simd::scalar::vmax(a.data(), c.data(), o1.data(), n);
        simd::vmax(a.data(), c.data(), o2.data(), n);
        CHECK(o1 == o2);
        simd::scalar::vmin(a.data(), c.data(), o1.data(), n);
        simd::vmin(a.data(), c.data(), o2.data(), n);
        CHECK(o1 == o2);
        simd::scalar::vabs(a.data(), o1.data(), n);
        simd::vabs(a.data(), o2.data(), n);
        CHECK(o1 == o2);
        for (int dir : {1, -1}) {
            simd::Omega om;
            om.dir = dir;
            simd::scalar::omega_extrapolate(a.data(), b.data(), c.data(), d.data(), o1.data(), n, om);
            simd::omega_extrapolate(a.data(), b.data(), c.data(), d.data(), o2.data(), n, om);
            CHECK(o1 == o2);
        }
        if (simd::avx2_available()) {
            simd::avx2::vmax(a.data(), c.data(), o2.data(), n);
            simd::scalar::vmax(a.data(), c.data(), o1.data(), n);
            CHECK(o1 == o2);
            simd::Omega om;
            simd::avx2::omega_extrapolate(a.data(), b.data(), c.data(), d.data(), o2.data(), n, om);
            simd::scalar::omega_extrapolate(a.data(), b.data(), c.data(), d.data(), o1.data(), n, om);
            CHECK(o1 == o2);
            CHECK(simd::avx2::max_abs_diff(a.data(), d.data(), n) == simd::scalar::max_abs_diff(a.data(), d.data(), n));
        }
    }
}

TEST_CASE("forcing the scalar path does not change a solve") {
    systems::Weighted w = systems::random_weighted(3);
    simd::force_scalar(false);
    Solutions a = smallest_greatest(systems::weighted(w), systems::weighted_bracket(w));
    std::string va = simd::active_variant();
    simd::force_scalar(true);
    CHECK(std::string(simd::active_variant()) == "scalar");
    Solutions b = smallest_greatest(systems::weighted(w), systems::weighted_bracket(w));
    simd::force_scalar(false);
    CHECK(a.up.csv() == b.up.csv());
    CHECK(a.down.csv() == b.down.csv());
    MESSAGE("default kernels: " << va);
}

}
