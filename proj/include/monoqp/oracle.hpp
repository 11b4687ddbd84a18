#pragma once

// Brute-force quasi-projectivity straight from the definitions, plus
// builders for the structural counterexample recipes the decider's
// violations correspond to.
//
// A is quasi-projective when for every epimorphic image T, every
// homomorphism f: A -> T factors through every epimorphism j: A -> T via an
// endomorphism phi with j(phi(x)) = f(x) pointwise.

#include <optional>
#include <string>
#include <vector>

#include "monoqp/decider.hpp"
#include "monoqp/hom.hpp"

namespace monoqp {

struct OracleOptions {
    int max_n = 6;            // guard on |A|
    bool canonical_only = false;  // restrict j to the canonical projection
};

struct OracleStats {
    long targets = 0;
    long epis = 0;
    long homs = 0;
    long lift_searches = 0;

    bool operator==(const OracleStats&) const = default;
};

struct OracleWitness {
    std::string target_kind;          // "congruence", "subalgebra" or "abstract"
    std::vector<int> theta_class_id;  // congruence targets
    std::vector<int> subalgebra;      // subalgebra targets (0-based elements)
    MonounaryAlgebra target;
    Homomorphism j;
    Homomorphism f;
};

struct OracleVerdict {
    bool quasi_projective = true;
    std::optional<OracleWitness> witness;
    OracleStats stats;
};

/// Search for an endomorphism phi of a with j(phi(x)) = f(x) for all x.
/// Candidates for phi(x) are restricted to the j-fiber of f(x) before the
/// orbit-consistency backtracking; deterministic depth-first order. Throws
/// std::invalid_argument unless j is a surjective homomorphism a -> t and f
/// a homomorphism a -> t.
std::optional<Homomorphism> lift_exists(const MonounaryAlgebra& a,
                                        const MonounaryAlgebra& t,
                                        const Homomorphism& j,
                                        const Homomorphism& f);

/// Definition check with targets ranging over all quotients of a: for every
/// congruence theta, T = a/theta, every epimorphism j: a -> T and every
/// homomorphism f: a -> T must admit a lift. First failure in deterministic
/// (theta, j, f) order is returned as the witness, re-verified on emission.
///
/// Restricting targets to quotients is complete: an epimorphism j': a -> T'
/// factors as iso . projection through a/ker(j'), and transporting (f', j')
/// along the isomorphism preserves existence of lifts. oracle_all_targets
/// asserts this reduction empirically.
OracleVerdict oracle_general(const MonounaryAlgebra& a, const OracleOptions& opt = {});

/// Same, with targets a/U for every subalgebra U (via the smallest
/// congruence collapsing U per component), j over all epimorphisms onto the
/// quotient.
OracleVerdict oracle_js(const MonounaryAlgebra& a, const OracleOptions& opt = {});

/// Reference check for the quotient reduction: targets range over every raw
/// image table of size 1..|a|. Much slower; intended for |a| <= 4.
OracleVerdict oracle_all_targets(const MonounaryAlgebra& a, const OracleOptions& opt = {});

/// Exhaustive re-verification of a no-lift witness: j epi, f hom, and no map
/// among all n^n candidates is a lifting endomorphism. Intended for n <= 5.
bool verify_witness(const MonounaryAlgebra& a, const OracleWitness& w);

// ---------------------------------------------------------------------------
// Counterexample fixtures. For each structural violation with finite
// instances, builds the minimal algebra of that shape together with a
// target T and maps (f, j) such that f and j are homomorphisms, j is
// surjective, and no lift exists. Parameters outside the violation's
// hypotheses are rejected with std::invalid_argument; so are the violations
// without finite instances (MixedCyclicity, InfiniteBranch,
// MultiBranchCycleFreeComponent), which the schema decider covers instead.
// ---------------------------------------------------------------------------

struct FixtureParams {
    int cycle_len = 1;     // m, the shared cycle length
    int cycle_len_2 = 2;   // second cycle length (UnequalCycleLengths only)
    int branch_len = 1;    // n
    int branch_len_2 = 2;  // longer branch (UnequalBranchLengths only)
    int stem_len = 1;      // shared acyclic stem below the junction (MultiBranchBunch)
    int offset_1 = 0;      // attachment offsets on the cycle
    int offset_2 = 1;
    int offset_3 = 0;      // third attachment (TooManyBranchesInComponent)
};

struct CounterexampleFixture {
    MonounaryAlgebra algebra;
    MonounaryAlgebra target;
    Homomorphism f;
    Homomorphism j;
};

CounterexampleFixture counterexample_fixture(QpViolation kind, const FixtureParams& p);

}  // namespace monoqp
