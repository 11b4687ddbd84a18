#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "monoqp/enumerate.hpp"
#include "monoqp/oracle.hpp"

using namespace monoqp;
using test::alg;
using test::cycle;
using test::e;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("lift_exists: f = j always lifts via the identity") {
    const auto a = alg({2, 1, 1});
    const auto tgt = alg({2, 1});
    const Homomorphism j(a, tgt, {0, 1, 1});
    const auto phi = lift_exists(a, tgt, j, j);
    REQUIRE(phi.has_value());
    for (int x = 0; x < a.size(); ++x) CHECK(j.map[phi->map[x]] == j.map[x]);
}

TEST_CASE("lift_exists: swapped constants across unequal cycles admit no lift") {
    // Fixed point next to a 2-cycle, target two fixed points.
    const auto a = alg({1, 3, 2});
    const auto t = alg({1, 2});
    const Homomorphism f(a, t, {0, 1, 1});
    const Homomorphism j(a, t, {1, 0, 0});
    CHECK_FALSE(lift_exists(a, t, j, f).has_value());
}

TEST_CASE("lift_exists: one-point target always lifts") {
    const auto a = cycle(2);
    const auto t = alg({1});
    const Homomorphism j(a, t, {0, 0});
    const Homomorphism f(a, t, {0, 0});
    CHECK(lift_exists(a, t, j, f).has_value());
}

TEST_CASE("lift_exists validates its instance") {
    const auto a = cycle(2);
    const auto t = alg({1, 1});
    const Homomorphism not_epi(a, t, {0, 0});
    CHECK_THROWS_AS(lift_exists(a, t, not_epi, not_epi), std::invalid_argument);
}

TEST_CASE("oracle_general on the smallest instances") {
    CHECK(oracle_general(alg({1})).quasi_projective);

    const auto bad = oracle_general(alg({1, 3, 2}));
    REQUIRE_FALSE(bad.quasi_projective);
    REQUIRE(bad.witness.has_value());
    CHECK(verify_witness(alg({1, 3, 2}), *bad.witness));

    // Branches half a cycle apart fall to the collapse of both branches
    // onto one image branch; the witness survives the raw-map sweep.
    const auto anti = oracle_general(alg({2, 1, 1, 2}));
    REQUIRE_FALSE(anti.quasi_projective);
    CHECK(verify_witness(alg({2, 1, 1, 2}), *anti.witness));
}

TEST_CASE("oracle_js mirrors oracle_general on the named cases") {
    const auto bad = oracle_js(alg({1, 3, 2}));
    REQUIRE_FALSE(bad.quasi_projective);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->target_kind == "subalgebra");
    CHECK(verify_witness(alg({1, 3, 2}), *bad.witness));

    CHECK(oracle_js(alg({1})).quasi_projective);
    CHECK_FALSE(oracle_js(alg({2, 1, 1, 2})).quasi_projective);
}

TEST_CASE("oracle guard") {
    CHECK_THROWS_AS(oracle_general(random_algebra(7, 3)), GuardError);
    OracleOptions wide;
    wide.max_n = 7;
    CHECK_NOTHROW(oracle_general(cycle(7), wide));
}

TEST_CASE("canonical-only restriction stays sound on tiny cases") {
    OracleOptions narrow;
    narrow.canonical_only = true;
    CHECK(oracle_general(alg({1}), narrow).quasi_projective);
    CHECK_FALSE(oracle_general(alg({1, 3, 2}), narrow).quasi_projective);
}

TEST_CASE("branches sharing one cyclic point: oracle adjudication") {
    // Two one-step branches on a fixed point.
    CHECK(oracle_general(alg({1, 1, 1})).quasi_projective);
    CHECK(oracle_js(alg({1, 1, 1})).quasi_projective);
    // Three and four of them.
    CHECK(oracle_general(alg({1, 1, 1, 1})).quasi_projective);
    CHECK(oracle_general(alg({1, 1, 1, 1, 1})).quasi_projective);
    // Two one-step branches at one point of a 2-cycle.
    CHECK(oracle_general(alg({2, 1, 1, 1})).quasi_projective);
    // Two-step branches over a fixed point survive the shift relocation.
    CHECK(oracle_general(alg({1, 1, 1, 2, 3})).quasi_projective);
    // Over a 2-cycle they do not, n = 6.
    CHECK_FALSE(oracle_general(alg({2, 1, 1, 1, 3, 4})).quasi_projective);
    // A shared-point pair next to a lone branch elsewhere is not allowed.
    CHECK_FALSE(oracle_general(alg({1, 1, 1, 4, 4})).quasi_projective);
    // A junction strictly above the cycle is not allowed.
    CHECK_FALSE(oracle_general(alg({1, 1, 2, 2})).quasi_projective);
}

TEST_CASE("oracle and decider agree on targeted n = 6 shapes") {
    const std::vector<std::vector<int>> shapes = {
        {2, 1, 1, 1, 3, 4},  // long sheaf on a 2-cycle
        {2, 1, 1, 1, 6, 5},  // one-step sheaf next to a bare 2-cycle
        {2, 1, 1, 2, 6, 5},  // branches half a cycle apart, bare 2-cycle aside
        {2, 1, 1, 5, 4, 4},  // one branch per component
        {3, 1, 2, 1, 1, 3},  // assorted
    };
    for (const auto& images : shapes) {
        const auto a = alg(images);
        CHECK(oracle_general(a).quasi_projective == decide_finite(a).quasi_projective());
    }
}

TEST_CASE("fixtures: unequal cycle lengths") {
    for (auto [c1, c2] : {std::pair{1, 2}, {2, 4}, {3, 5}}) {
        FixtureParams p;
        p.cycle_len = c1;
        p.cycle_len_2 = c2;
        const auto fx = counterexample_fixture(QpViolation::UnequalCycleLengths, p);
        CHECK(fx.j.is_surjective());
        CHECK_FALSE(lift_exists(fx.algebra, fx.target, fx.j, fx.f).has_value());
    }
    FixtureParams equal;
    equal.cycle_len = equal.cycle_len_2 = 3;
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::UnequalCycleLengths, equal),
                    std::invalid_argument);
}

TEST_CASE("fixtures: junction above the cycle") {
    FixtureParams p;
    p.cycle_len = 1;
    p.stem_len = 1;
    p.branch_len = 1;
    p.branch_len_2 = 1;
    const auto fx = counterexample_fixture(QpViolation::MultiBranchBunch, p);
    CHECK(fx.algebra.size() == 4);  // the [1,1,2,2] shape
    CHECK_FALSE(lift_exists(fx.algebra, fx.target, fx.j, fx.f).has_value());
}

TEST_CASE("fixtures: unequal branch lengths need a strict inequality") {
    FixtureParams p;
    p.branch_len = 2;
    p.branch_len_2 = 2;
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::UnequalBranchLengths, p),
                    std::invalid_argument);
}

TEST_CASE("fixtures: every separated pair has a counterexample, antipodal included") {
    for (auto [m, k, l] : {std::tuple{4, 0, 2}, {3, 0, 1}, {2, 0, 1}, {6, 1, 4}}) {
        FixtureParams p;
        p.cycle_len = m;
        p.offset_1 = k;
        p.offset_2 = l;
        const auto fx = counterexample_fixture(QpViolation::NonAntipodalBranchPair, p);
        CHECK_FALSE(lift_exists(fx.algebra, fx.target, fx.j, fx.f).has_value());
    }
    FixtureParams same;
    same.cycle_len = 4;
    same.offset_1 = same.offset_2 = 0;
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::NonAntipodalBranchPair, same),
                    std::invalid_argument);
}

TEST_CASE("fixtures: shared-point sheaf over a long cycle with long branches") {
    FixtureParams p;
    p.stem_len = 0;
    p.cycle_len = 2;
    p.branch_len = 2;
    const auto fx = counterexample_fixture(QpViolation::MultiBranchBunch, p);
    CHECK(fx.algebra.size() == 6);
    CHECK_FALSE(lift_exists(fx.algebra, fx.target, fx.j, fx.f).has_value());

    // The admissible sheaves are refused.
    p.cycle_len = 1;
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::MultiBranchBunch, p),
                    std::invalid_argument);
    p.cycle_len = 2;
    p.branch_len = 1;
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::MultiBranchBunch, p),
                    std::invalid_argument);
}

TEST_CASE("fixtures: three branches at one shared point are refused") {
    FixtureParams p;
    p.cycle_len = 2;
    p.offset_1 = p.offset_2 = p.offset_3 = 1;
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::TooManyBranchesInComponent, p),
                    std::invalid_argument);
}

TEST_CASE("fixtures: violations without finite instances are refused") {
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::InfiniteBranch, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::MixedCyclicity, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(counterexample_fixture(QpViolation::MultiBranchCycleFreeComponent, {}),
                    std::invalid_argument);
}

TEST_CASE("the two definitions genuinely diverge on a five-element algebra") {
    // A two-branch sheaf on a fixed point next to a branched fixed point:
    // the general kill needs an image merging the two components, which no
    // collapsed subalgebra can produce.
    const auto a = alg({1, 1, 1, 4, 4});
    CHECK_FALSE(oracle_general(a).quasi_projective);
    CHECK(oracle_js(a).quasi_projective);
    CHECK_FALSE(decide_finite(a).quasi_projective());
}

TEST_CASE("witnesses re-verify against the raw map sweep") {
    std::mt19937_64 rng(6200);
    int not_qp_seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_algebra(2 + rng() % 4, rng());
        const auto v = oracle_general(a);
        if (!v.quasi_projective) {
            ++not_qp_seen;
            CHECK(verify_witness(a, *v.witness));
        }
    }
    CHECK(not_qp_seen > 5);
}

TEST_SUITE_END();
