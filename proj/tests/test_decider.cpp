#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "monoqp/decider.hpp"
#include "monoqp/enumerate.hpp"
#include "monoqp/oracle.hpp"

using namespace monoqp;
using test::alg;
using test::chain_attachment;

namespace {

Schema one_cycle(int cn, std::vector<std::pair<int, BranchTree>> atts) {
    WithCycle wc;
    wc.cn = cn;
    for (auto& [off, tree] : atts) wc.attachments.emplace(off, std::move(tree));
    return Schema{{std::move(wc)}};
}

}  // namespace

TEST_SUITE_BEGIN("decider");

TEST_CASE("unequal cycle lengths") {
    Schema s;
    s.components.emplace_back(WithCycle{1, {}});
    s.components.emplace_back(WithCycle{2, {}});
    const auto v = decide(s);
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::UnequalCycleLengths);
    REQUIRE(v.sites.size() == 2);
    CHECK(v.sites[0].length == 1);
    CHECK(v.sites[1].length == 2);
}

TEST_CASE("branches at two attachment points are rejected, antipodal included") {
    // Half a cycle apart: the collapse of both branches onto one image
    // branch admits no lift, so even this pair fails.
    const auto anti = decide(one_cycle(4, {{0, chain_attachment(1)}, {2, chain_attachment(1)}}));
    REQUIRE_FALSE(anti.quasi_projective());
    CHECK(*anti.violation == QpViolation::NonAntipodalBranchPair);

    const auto odd = decide(one_cycle(3, {{0, chain_attachment(1)}, {1, chain_attachment(1)}}));
    REQUIRE_FALSE(odd.quasi_projective());
    CHECK(*odd.violation == QpViolation::NonAntipodalBranchPair);
}

TEST_CASE("a shared-point pair plus a branch in another component is rejected") {
    BranchTree pair_tree;
    pair_tree.children.resize(2);  // two one-step branches at one point
    Schema s;
    WithCycle pair;
    pair.cn = 2;
    pair.attachments.emplace(0, pair_tree);
    WithCycle extra;
    extra.cn = 2;
    extra.attachments.emplace(0, chain_attachment(1));
    s.components.emplace_back(std::move(pair));
    s.components.emplace_back(std::move(extra));
    const auto v = decide(s);
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::ExtraBranchesBesidePair);
}

TEST_CASE("cycle-free components without decorations are accepted") {
    Schema s;
    s.components.emplace_back(CycleFree{false, {}});  // chain with a leaf
    s.components.emplace_back(CycleFree{true, {}});   // bi-infinite chain
    CHECK(decide(s).quasi_projective());
}

TEST_CASE("a decorated chain is rejected") {
    CycleFree cf;
    cf.decorations.emplace(2, chain_attachment(1));
    const auto v = decide(Schema{{cf}});
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::MultiBranchCycleFreeComponent);
}

TEST_CASE("a chain presented with an absorbable backward decoration stays accepted") {
    CycleFree cf;
    cf.decorations.emplace(0, chain_attachment(3));
    CHECK(decide(Schema{{cf}}).quasi_projective());
}

TEST_CASE("mixing a cycle with a chain is rejected") {
    Schema s;
    s.components.emplace_back(WithCycle{2, {}});
    s.components.emplace_back(CycleFree{false, {}});
    const auto v = decide(s);
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::MixedCyclicity);
}

TEST_CASE("an infinite branch into a cycle is rejected") {
    const auto v = decide(one_cycle(2, {{0, chain_attachment(2, true)}}));
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::InfiniteBranch);
    CHECK(is_infinite(v.sites.at(0).length));
}

TEST_CASE("a junction above the cycle is rejected") {
    BranchTree fork;
    fork.children.resize(1);
    fork.children[0].children.resize(2);  // acyclic node with two preimages
    const auto v = decide(one_cycle(1, {{0, fork}}));
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::MultiBranchBunch);
}

TEST_CASE("branches of different lengths are rejected") {
    Schema s;
    WithCycle c1;
    c1.cn = 1;
    c1.attachments.emplace(0, chain_attachment(1));
    WithCycle c2;
    c2.cn = 1;
    c2.attachments.emplace(0, chain_attachment(2));
    s.components.emplace_back(std::move(c1));
    s.components.emplace_back(std::move(c2));
    const auto v = decide(s);
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::UnequalBranchLengths);
}

TEST_CASE("three branches over two attachment points are rejected") {
    BranchTree two_at_once;
    two_at_once.children.resize(2);
    const auto v = decide(one_cycle(2, {{0, two_at_once}, {1, chain_attachment(1)}}));
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::TooManyBranchesInComponent);
}

TEST_CASE("shared-point sheaves: fixed point or one-step branches only") {
    BranchTree three;
    three.children.resize(3);
    CHECK(decide(one_cycle(1, {{0, three}})).quasi_projective());

    BranchTree two;
    two.children.resize(2);
    CHECK(decide(one_cycle(4, {{2, two}})).quasi_projective());

    // Two two-step branches over a fixed point survive the shift; over a
    // longer cycle they do not.
    BranchTree two_long;
    two_long.children.resize(2);
    two_long.children[0].children.resize(1);
    two_long.children[1].children.resize(1);
    CHECK(decide(one_cycle(1, {{0, two_long}})).quasi_projective());
    const auto v = decide(one_cycle(2, {{0, two_long}}));
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::MultiBranchBunch);
}

TEST_CASE("decide_finite small cases") {
    CHECK(decide_finite(alg({1})).quasi_projective());
    // Fixed point with a two-step branch next to a bare fixed point.
    CHECK(decide_finite(alg({1, 1, 2, 4})).quasi_projective());
    // Two identical branched two-cycles.
    CHECK(decide_finite(alg({2, 1, 1, 5, 4, 4})).quasi_projective());
    // Fixed point next to a two-cycle.
    const auto v = decide_finite(alg({1, 3, 2}));
    REQUIRE_FALSE(v.quasi_projective());
    CHECK(*v.violation == QpViolation::UnequalCycleLengths);
}

namespace {

long longest_path(const BranchTree& t) {
    long best = 0;
    for (const auto& c : t.children) best = std::max(best, 1 + longest_path(c));
    return best;
}

// First node with several children strictly below the root, plus its depth.
bool find_junction(const BranchTree& t, long depth, const BranchTree** node, long* jdepth) {
    for (const auto& c : t.children) {
        if (c.children.size() >= 2) {
            *node = &c;
            *jdepth = depth + 1;
            return true;
        }
        if (find_junction(c, depth + 1, node, jdepth)) return true;
    }
    return false;
}

// Rebuild fixture parameters from a canonical schema and its verdict.
FixtureParams params_from(const Schema& s, const QpVerdict& v) {
    FixtureParams p;
    const auto& first = std::get<WithCycle>(s.components[v.sites.at(0).component]);
    switch (*v.violation) {
        case QpViolation::UnequalCycleLengths:
            p.cycle_len = static_cast<int>(v.sites.at(0).length);
            p.cycle_len_2 = static_cast<int>(v.sites.at(1).length);
            break;
        case QpViolation::UnequalBranchLengths:
            p.cycle_len = first.cn;
            p.branch_len = static_cast<int>(std::min(v.sites.at(0).length, v.sites.at(1).length));
            p.branch_len_2 =
                static_cast<int>(std::max(v.sites.at(0).length, v.sites.at(1).length));
            break;
        case QpViolation::NonAntipodalBranchPair:
            p.cycle_len = first.cn;
            p.offset_1 = static_cast<int>(v.sites.at(0).offset);
            p.offset_2 = static_cast<int>(v.sites.at(1).offset);
            p.branch_len = static_cast<int>(v.sites.at(0).length);
            break;
        case QpViolation::TooManyBranchesInComponent:
            p.cycle_len = first.cn;
            p.offset_1 = static_cast<int>(v.sites.at(0).offset);
            p.offset_2 = static_cast<int>(v.sites.at(1).offset);
            p.offset_3 = static_cast<int>(v.sites.at(2).offset);
            p.branch_len = static_cast<int>(v.sites.at(0).length);
            break;
        case QpViolation::ExtraBranchesBesidePair: {
            p.cycle_len = first.cn;
            p.offset_1 = static_cast<int>(v.sites.at(0).offset);
            // every surviving branch is a chain from a root child
            p.branch_len = static_cast<int>(
                longest_path(first.attachments.at(p.offset_1).children.front()) + 1);
            break;
        }
        case QpViolation::MultiBranchBunch: {
            p.cycle_len = first.cn;
            if (v.sites.at(0).length != -1) {  // shared-point sheaf
                p.stem_len = 0;
                p.branch_len = static_cast<int>(v.sites.at(0).length);
            } else {  // branching point strictly above the cycle
                const auto& tree = first.attachments.at(v.sites.at(0).offset);
                const BranchTree* node = nullptr;
                long g = 0;
                REQUIRE(find_junction(tree, 0, &node, &g));
                p.stem_len = static_cast<int>(g);
                p.branch_len = static_cast<int>(longest_path(node->children.at(0)) + 1);
                p.branch_len_2 = static_cast<int>(longest_path(node->children.at(1)) + 1);
            }
            break;
        }
        default:
            break;
    }
    return p;
}

}  // namespace

TEST_CASE("every finite violation witness rebuilds as a no-lift counterexample") {
    long rebuilt = 0;
    for (int n = 1; n <= 5; ++n) {
        const auto cat = all_algebras(n);
        for (const auto& a : cat.representatives) {
            const QpVerdict v = decide_finite(a);
            if (v.quasi_projective()) continue;
            const Schema s = canonicalize(to_schema(a));
            // The builder re-verifies that j is surjective and no lift exists.
            const auto fx = counterexample_fixture(*v.violation, params_from(s, v));
            CHECK_FALSE(lift_exists(fx.algebra, fx.target, fx.j, fx.f).has_value());
            ++rebuilt;
        }
    }
    CHECK(rebuilt > 30);
}

TEST_CASE("verdicts are stable under canonicalization and reshuffling") {
    std::mt19937_64 rng(6100);
    for (int trial = 0; trial < 400; ++trial) {
        Schema s = test::random_schema(rng);
        const auto base = decide(s);
        const auto canon = decide(canonicalize(s));
        CHECK(base.violation == canon.violation);

        Schema shuffled = s;
        std::shuffle(shuffled.components.begin(), shuffled.components.end(), rng);
        for (auto& comp : shuffled.components) {
            auto* wc = std::get_if<WithCycle>(&comp);
            if (!wc || wc->attachments.empty()) continue;
            const int r = static_cast<int>(rng() % wc->cn);
            std::map<int, BranchTree> rotated;
            for (auto& [off, tree] : wc->attachments)
                rotated.emplace((off + r) % wc->cn, std::move(tree));
            wc->attachments = std::move(rotated);
        }
        CHECK(decide(shuffled).violation == base.violation);
    }
}

TEST_SUITE_END();
