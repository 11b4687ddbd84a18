#pragma once

// Finite monounary algebras: a carrier {0, ..., n-1} with one total unary
// operation. Equivalently, functional graphs. Values are immutable after
// construction and safe to share across threads; every operation here is a
// pure function of its inputs.
//
// Elements are 0-based internally. File formats and the CLI use 1-based
// labels; conversion happens at the I/O boundary only.

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace monoqp {

/// Guard violations (instance too large for an exhaustive operation).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class MonounaryAlgebra {
public:
    /// Build from a 0-based image table: images[x] is the image of x.
    /// Throws std::invalid_argument if empty or any entry is out of range.
    explicit MonounaryAlgebra(std::vector<int> images);

    int size() const noexcept { return static_cast<int>(images_.size()); }

    /// The unary operation applied once.
    int step(int x) const;

    /// The unary operation applied k times; k = 0 returns x. Runs in O(n)
    /// regardless of k by reducing k against the orbit's eventual cycle.
    int iterate(int x, long long k) const;

    const std::vector<int>& images() const noexcept { return images_; }

    bool operator==(const MonounaryAlgebra&) const = default;
    auto operator<=>(const MonounaryAlgebra&) const = default;

private:
    std::vector<int> images_;
};

/// Build an algebra from a 1-based image table (the map-file convention).
/// Rejects n = 0 and any image outside 1..n; the error message names the
/// 1-based position of the offending entry.
MonounaryAlgebra parse_map(int n, const std::vector<int>& one_based_images);

struct ComponentData {
    std::vector<int> cycle;     // cycle elements in traversal order, starting
                                // from the minimal cyclic element
    std::vector<int> elements;  // all elements of the component, ascending
    int cn() const noexcept { return static_cast<int>(cycle.size()); }
};

// Structural statistics of a finite algebra. Every connected component of a
// finite algebra has a cycle, so cn is always finite here; the symbolic
// cycle-free shapes live in schema.hpp.
struct ComponentAnalysis {
    std::vector<int> component_of;  // element -> component index
    std::vector<bool> is_cyclic;
    std::vector<bool> is_leaf;      // no preimage at all
    std::vector<int> height;        // least k >= 1 with step^k(x) cyclic; 0 for cyclic x
    std::vector<int> depth;         // greatest k >= 0 with a leaf among the k-fold
                                    // preimages; 0 for cyclic x (not meaningful there)
    std::vector<int> cycle_pos;     // position within the component cycle; -1 if acyclic
    std::vector<ComponentData> components;  // ordered by minimal element
};

ComponentAnalysis analyze(const MonounaryAlgebra& a);

/// Least k >= 0 with step^k(ci) = cj. Not symmetric; for distinct cyclic
/// elements of one component, d(ci,cj) + d(cj,ci) equals the cycle length.
/// Throws std::invalid_argument unless both are cyclic and share a component.
int cycle_distance(const ComponentAnalysis& an, int ci, int cj);

/// All iterated preimages of an acyclic element x, including x itself,
/// ascending. Throws std::invalid_argument if x is cyclic.
std::vector<int> bunch(const MonounaryAlgebra& a, const ComponentAnalysis& an, int x);

/// Canonical key: equal iff the algebras are isomorphic. Opaque but totally
/// ordered; implemented over the canonical schema (see schema.hpp).
std::string canonical_form(const MonounaryAlgebra& a);

}  // namespace monoqp
