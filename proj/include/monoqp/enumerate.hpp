#pragma once

// Exhaustive and seeded-random generation of algebras for the equivalence
// suites.

#include <cstdint>
#include <string>
#include <vector>

#include "monoqp/algebra.hpp"

namespace monoqp {

struct AlgebraCatalog {
    int n = 0;
    std::vector<MonounaryAlgebra> representatives;  // pairwise non-isomorphic
    std::vector<std::string> keys;                  // canonical key per entry

    size_t size() const { return representatives.size(); }
};

/// Every isomorphism class of size-n algebras: enumerate all n^n image
/// tables, canonicalize, deduplicate. Representatives are the
/// lexicographically least raw tables of their classes; entries ordered by
/// canonical key. Throws GuardError above max_n.
AlgebraCatalog all_algebras(int n, int max_n = 7);

/// Uniform over image tables, reproducible across platforms: mt19937_64
/// seeded with seed, entries drawn by rejection sampling.
MonounaryAlgebra random_algebra(int n, std::uint64_t seed);

/// 64-bit FNV-1a, used to name catalog export files; stable across
/// platforms, unlike std::hash.
std::uint64_t fnv1a64(const std::string& s);

}  // namespace monoqp
