#include "monoqp/decider.hpp"

#include <algorithm>

namespace monoqp {

std::string to_string(QpViolation v) {
    switch (v) {
        case QpViolation::MixedCyclicity: return "MixedCyclicity";
        case QpViolation::UnequalCycleLengths: return "UnequalCycleLengths";
        case QpViolation::InfiniteBranch: return "InfiniteBranch";
        case QpViolation::MultiBranchBunch: return "MultiBranchBunch";
        case QpViolation::UnequalBranchLengths: return "UnequalBranchLengths";
        case QpViolation::TooManyBranchesInComponent: return "TooManyBranchesInComponent";
        case QpViolation::NonAntipodalBranchPair: return "NonAntipodalBranchPair";
        case QpViolation::ExtraBranchesBesidePair: return "ExtraBranchesBesidePair";
        case QpViolation::MultiBranchCycleFreeComponent: return "MultiBranchCycleFreeComponent";
    }
    return "?";
}

namespace {

struct Branch {
    int component;
    long offset;
    long length;  // kInfinite possible
};

// One branch per upward continuation at the attachment point: each root
// child heads a branch, a root tail is an unbounded branch of its own.
// Reports the first strictly-acyclic junction if any.
struct TreeScan {
    std::vector<long> lengths;
    bool junction = false;
};

void scan_chain(const BranchTree& node, long depth, TreeScan& out) {
    const long ways = static_cast<long>(node.children.size()) + (node.infinite_tail ? 1 : 0);
    if (ways > 1) {
        out.junction = true;
        return;
    }
    if (node.infinite_tail) {
        out.lengths.push_back(kInfinite);
        return;
    }
    if (node.children.empty()) {
        out.lengths.push_back(depth);
        return;
    }
    scan_chain(node.children.front(), depth + 1, out);
}

TreeScan scan_attachment(const BranchTree& root) {
    TreeScan out;
    if (root.infinite_tail) out.lengths.push_back(kInfinite);
    for (const auto& child : root.children) {
        scan_chain(child, 1, out);
        if (out.junction) return out;
    }
    return out;
}

std::string fmt_len(long v) { return is_infinite(v) ? "inf" : std::to_string(v); }

}  // namespace

QpVerdict decide(const Schema& input) {
    const Schema s = canonicalize(input);
    QpVerdict verdict;

    auto fail = [&](QpViolation v, std::vector<QpWitnessSite> sites, std::string detail) {
        verdict.violation = v;
        verdict.sites = std::move(sites);
        verdict.detail = std::move(detail);
        return verdict;
    };

    int first_cyclic = -1, first_chain = -1;
    for (size_t i = 0; i < s.components.size(); ++i) {
        if (std::holds_alternative<WithCycle>(s.components[i])) {
            if (first_cyclic < 0) first_cyclic = static_cast<int>(i);
        } else if (first_chain < 0) {
            first_chain = static_cast<int>(i);
        }
    }
    if (first_cyclic >= 0 && first_chain >= 0)
        return fail(QpViolation::MixedCyclicity,
                    {{first_cyclic, -1, -1}, {first_chain, -1, -1}},
                    "component " + std::to_string(first_cyclic) + " has a cycle, component " +
                        std::to_string(first_chain) + " does not");

    if (first_cyclic < 0) {
        // Chains only: each component must be a single branch, which after
        // canonicalization means no decorations at all.
        for (size_t i = 0; i < s.components.size(); ++i) {
            const auto& cf = std::get<CycleFree>(s.components[i]);
            if (!cf.decorations.empty()) {
                const long idx = cf.decorations.begin()->first;
                return fail(QpViolation::MultiBranchCycleFreeComponent,
                            {{static_cast<int>(i), idx, -1}},
                            "chain component " + std::to_string(i) +
                                " carries a second branch at spine index " + std::to_string(idx));
            }
        }
        return verdict;
    }

    const int cn0 = std::get<WithCycle>(s.components.front()).cn;
    for (size_t i = 1; i < s.components.size(); ++i) {
        const int cni = std::get<WithCycle>(s.components[i]).cn;
        if (cni != cn0)
            return fail(QpViolation::UnequalCycleLengths,
                        {{0, -1, cn0}, {static_cast<int>(i), -1, cni}},
                        "cycle lengths " + std::to_string(cn0) + " and " + std::to_string(cni));
    }

    // Scan every attachment once; junctions and lengths drive the rest.
    std::vector<Branch> branches;
    for (size_t i = 0; i < s.components.size(); ++i) {
        const auto& wc = std::get<WithCycle>(s.components[i]);
        for (const auto& [off, tree] : wc.attachments) {
            TreeScan scan = scan_attachment(tree);
            if (scan.junction)
                return fail(QpViolation::MultiBranchBunch, {{static_cast<int>(i), off, -1}},
                            "an acyclic element above offset " + std::to_string(off) +
                                " of component " + std::to_string(i) +
                                " has two upward continuations");
            for (long len : scan.lengths)
                branches.push_back({static_cast<int>(i), off, len});
        }
    }

    for (const Branch& b : branches)
        if (is_infinite(b.length))
            return fail(QpViolation::InfiniteBranch, {{b.component, b.offset, kInfinite}},
                        "unbounded branch at offset " + std::to_string(b.offset) +
                            " of component " + std::to_string(b.component));

    for (const Branch& b : branches)
        if (b.length != branches.front().length)
            return fail(QpViolation::UnequalBranchLengths,
                        {{branches.front().component, branches.front().offset,
                          branches.front().length},
                         {b.component, b.offset, b.length}},
                        "branch lengths " + fmt_len(branches.front().length) + " and " +
                            fmt_len(b.length));

    // Branch placement. A component tolerates several branches only when
    // they share one attachment point, and a shared-point sheaf survives the
    // shift relocation only over a fixed point or with one-step branches;
    // branches at two distinct points never survive the collapse relocation,
    // half a cycle apart or not.
    std::vector<std::vector<Branch>> per_comp(s.components.size());
    for (const Branch& b : branches) per_comp[b.component].push_back(b);

    for (size_t i = 0; i < per_comp.size(); ++i) {
        const auto& bs = per_comp[i];
        if (bs.size() < 2) continue;
        std::vector<long> offsets;
        for (const Branch& b : bs) offsets.push_back(b.offset);
        std::sort(offsets.begin(), offsets.end());
        const long distinct =
            std::unique(offsets.begin(), offsets.end()) - offsets.begin();
        if (distinct >= 2 && bs.size() >= 3) {
            std::vector<QpWitnessSite> sites;
            for (const Branch& b : bs) sites.push_back({b.component, b.offset, b.length});
            return fail(QpViolation::TooManyBranchesInComponent, std::move(sites),
                        std::to_string(bs.size()) + " branches over " + std::to_string(distinct) +
                            " attachment points in component " + std::to_string(i));
        }
        if (distinct == 2) {
            const int cn = std::get<WithCycle>(s.components[i]).cn;
            const long k = offsets[0], l = offsets[1];
            return fail(QpViolation::NonAntipodalBranchPair,
                        {{static_cast<int>(i), k, bs.front().length},
                         {static_cast<int>(i), l, bs.back().length}},
                        "branches at two attachment points, offsets " + std::to_string(k) +
                            " and " + std::to_string(l) + " on a cycle of length " +
                            std::to_string(cn));
        }
        const int cn = std::get<WithCycle>(s.components[i]).cn;
        const long len = bs.front().length;
        if (cn >= 2 && len >= 2) {
            std::vector<QpWitnessSite> sites;
            for (const Branch& b : bs) sites.push_back({b.component, b.offset, b.length});
            return fail(QpViolation::MultiBranchBunch, std::move(sites),
                        std::to_string(bs.size()) + " branches of length " + std::to_string(len) +
                            " share one point of a cycle of length " + std::to_string(cn) +
                            " in component " + std::to_string(i));
        }
    }

    for (size_t i = 0; i < per_comp.size(); ++i) {
        if (per_comp[i].size() < 2) continue;
        for (size_t other = 0; other < per_comp.size(); ++other) {
            if (other == i || per_comp[other].empty()) continue;
            return fail(QpViolation::ExtraBranchesBesidePair,
                        {{static_cast<int>(i), per_comp[i].front().offset, -1},
                         {static_cast<int>(other), per_comp[other].front().offset, -1}},
                        "component " + std::to_string(i) +
                            " carries several branches while component " +
                            std::to_string(other) + " also carries one");
        }
    }

    return verdict;
}

QpVerdict decide_finite(const MonounaryAlgebra& a) { return decide(to_schema(a)); }

}  // namespace monoqp
