#pragma once

// Structural quasi-projectivity decision over schemas. A schema passes iff
// no violation below applies; the first failing check in the fixed order is
// reported with concrete witness sites.

#include <optional>
#include <string>
#include <vector>

#include "monoqp/schema.hpp"

namespace monoqp {

enum class QpViolation {
    MixedCyclicity,                 // a component with a cycle next to a cycle-free one
    UnequalCycleLengths,
    InfiniteBranch,
    MultiBranchBunch,               // an acyclic branching point, or several long
                                    // branches sharing one point of a long cycle
    UnequalBranchLengths,
    TooManyBranchesInComponent,     // >= 3 branches spread over >= 2 attachment points
    NonAntipodalBranchPair,         // two branches at distinct attachment points
    ExtraBranchesBesidePair,        // a multi-branch component next to any other branch
    MultiBranchCycleFreeComponent,  // a decorated chain
};

std::string to_string(QpViolation v);

struct QpWitnessSite {
    int component = -1;
    long offset = -1;  // cycle offset or spine index; -1 when not applicable
    long length = -1;  // branch length; kInfinite for an unbounded one; -1 n/a

    bool operator==(const QpWitnessSite&) const = default;
};

struct QpVerdict {
    std::optional<QpViolation> violation;  // empty means quasi-projective
    std::vector<QpWitnessSite> sites;
    std::string detail;  // deterministic human-readable elaboration

    bool quasi_projective() const { return !violation.has_value(); }
};

/// Decision procedure. Canonicalizes its input first, so the verdict is
/// invariant under component reordering and cycle rotation. Checks, in
/// order:
///   1. a with-cycle component next to a cycle-free one -> MixedCyclicity;
///      if everything is cycle-free: any decoration ->
///      MultiBranchCycleFreeComponent, otherwise accept;
///   2. all cycle lengths equal, else UnequalCycleLengths;
///   3. any branch of unbounded length -> InfiniteBranch;
///   4. any acyclic branching point (a non-root tree node with two upward
///      continuations) -> MultiBranchBunch;
///   5. all branch lengths equal, else UnequalBranchLengths;
///   6. a component with >= 3 branches at >= 2 distinct attachment points ->
///      TooManyBranchesInComponent;
///   7. a component with two branches at distinct attachment points ->
///      NonAntipodalBranchPair (no separation is admissible: a homomorphism
///      onto the quotient collapsing the cycle may send both branches onto
///      one image branch, and the forced lift then pins two different cycle
///      rotations at once);
///   8. several branches sharing one attachment point of a cycle of length
///      >= 2 with branch length >= 2 -> MultiBranchBunch (the epimorphism
///      folding one branch into the cycle admits a shifted homomorphic
///      image whose lift would have to rotate the cycle by one);
///   9. if some component carries >= 2 branches, every other component must
///      carry none, else ExtraBranchesBesidePair.
/// A shared-point sheaf of branches over a fixed point, or of one-step
/// branches over any cycle, is accepted in any number; rule 4 concerns
/// branching strictly above the cycle. Exhaustive agreement with the
/// definitional oracles over all isomorphism classes with n <= 5 is part of
/// the acceptance suite.
QpVerdict decide(const Schema& s);

/// decide(canonicalize(to_schema(a))).
QpVerdict decide_finite(const MonounaryAlgebra& a);

}  // namespace monoqp
