#pragma once

// Symbolic, finitely presented component shapes. These can express the two
// kinds of infinity a finite table cannot: an unbounded simple preimage chain
// (infinite_tail) and components without a cycle. Finite algebras convert
// losslessly via to_schema; cycle-free shapes exist only as schema input.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "monoqp/algebra.hpp"

namespace monoqp {

/// Sentinel for an infinite branch length / count.
inline constexpr long kInfinite = -1;
inline bool is_infinite(long v) { return v == kInfinite; }

// A rooted preimage tree hanging at an attachment point. The root stands for
// the attachment point itself (a cyclic element or a spine element); its
// proper descendants are the acyclic elements above it. infinite_tail marks
// an unbounded simple chain continuing above the node.
struct BranchTree {
    std::vector<BranchTree> children;
    bool infinite_tail = false;

    bool operator==(const BranchTree&) const = default;

    /// Nodes in this subtree including the root.
    long node_count() const;
};

struct WithCycle {
    int cn = 1;
    std::map<int, BranchTree> attachments;  // cycle offset -> tree; offsets in [0, cn)

    bool operator==(const WithCycle&) const = default;
};

// A component whose forward orbit never repeats. The spine is the single
// alpha-chain; it is forward-infinite by construction. If backward_infinite
// is false, spine index 0 is the backward end. Decorations attach extra
// preimage trees at spine indexes.
struct CycleFree {
    bool backward_infinite = false;
    std::map<long, BranchTree> decorations;

    bool operator==(const CycleFree&) const = default;
};

using ComponentSchema = std::variant<WithCycle, CycleFree>;

struct Schema {
    std::vector<ComponentSchema> components;

    bool operator==(const Schema&) const = default;
};

/// Throws std::invalid_argument on structural violations: empty schema,
/// cn < 1, attachment offsets outside [0, cn), negative decoration indexes
/// on a chain with a backward end.
void validate(const Schema& s);

/// Canonical presentation: tree children sorted by canonical encoding,
/// cycle attachments rotated to the lexicographically minimal offset
/// sequence, bi-infinite chain decorations shifted so the minimal index is
/// 0, a simple-chain decoration at the backward end of a chain absorbed into
/// the spine, empty attachment trees dropped, components sorted. Idempotent.
Schema canonicalize(const Schema& s);

/// Totally ordered encoding of a canonical schema; injective on canonical
/// presentations.
std::string schema_key(const Schema& s);

enum class ComponentKind { WithCycle, CycleFree };

struct BranchRecord {
    int component = 0;
    ComponentKind kind = ComponentKind::WithCycle;
    long offset = 0;             // cycle offset, or spine index for chains
    long length = 0;             // longest root-to-leaf path, in nodes below the
                                 // root; kInfinite if a tail occurs
    bool is_simple_path = true;  // at most one upward continuation at every node
    long branch_count = 1;       // maximal branches in the tree: leaves plus tails
};

/// One record per attachment / decoration, in component then offset order.
std::vector<BranchRecord> branch_inventory(const Schema& s);

/// One WithCycle component per connected component of a finite algebra; the
/// attachment tree at offset o is the preimage tree of the cyclic element at
/// cycle position o. Element count of the result equals the algebra's size.
Schema to_schema(const MonounaryAlgebra& a);

/// Sum of cn plus proper attachment nodes over all components; kInfinite if
/// any part is infinite.
long element_count(const Schema& s);

}  // namespace monoqp
