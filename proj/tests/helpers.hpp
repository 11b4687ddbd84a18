#pragma once

#include <random>
#include <vector>

#include "monoqp/algebra.hpp"
#include "monoqp/schema.hpp"

namespace monoqp::test {

/// Build from 1-based images, matching the map-file convention.
inline MonounaryAlgebra alg(const std::vector<int>& one_based) {
    return parse_map(static_cast<int>(one_based.size()), one_based);
}

/// 1-based element label to internal index.
constexpr int e(int one_based) { return one_based - 1; }

inline MonounaryAlgebra cycle(int len) {
    std::vector<int> images(len);
    for (int i = 0; i < len; ++i) images[i] = (i + 1) % len;
    return MonounaryAlgebra(images);
}

/// Attachment tree that is a simple chain of `len` nodes below the root;
/// if with_tail, the topmost node carries an infinite tail.
inline BranchTree chain_attachment(int len, bool with_tail = false) {
    BranchTree node;
    node.infinite_tail = with_tail;
    for (int i = 0; i < len; ++i) {
        BranchTree parent;
        parent.children.push_back(std::move(node));
        node = std::move(parent);
    }
    return node;  // this node is the (virtual) attachment root
}

/// Seeded random schema for property tests.
inline Schema random_schema(std::mt19937_64& rng) {
    auto draw = [&](int n) { return static_cast<int>(rng() % n); };
    auto random_tree = [&](auto&& self, int depth) -> BranchTree {
        BranchTree t;
        t.infinite_tail = depth > 0 && draw(5) == 0;
        const int kids = depth == 0 ? 0 : draw(3);
        for (int i = 0; i < kids; ++i) t.children.push_back(self(self, depth - 1));
        return t;
    };
    Schema s;
    const int comps = 1 + draw(3);
    for (int c = 0; c < comps; ++c) {
        if (draw(4) == 0) {
            CycleFree cf;
            cf.backward_infinite = draw(2) == 0;
            const int decs = draw(3);
            for (int d = 0; d < decs; ++d) {
                BranchTree t = random_tree(random_tree, 2);
                if (t.children.empty() && !t.infinite_tail) continue;
                cf.decorations.emplace(draw(4), std::move(t));
            }
            s.components.emplace_back(std::move(cf));
        } else {
            WithCycle wc;
            wc.cn = 1 + draw(5);
            const int atts = draw(3);
            for (int i = 0; i < atts; ++i) {
                BranchTree t = random_tree(random_tree, 2);
                if (t.children.empty() && !t.infinite_tail) continue;
                wc.attachments.emplace(draw(wc.cn), std::move(t));
            }
            s.components.emplace_back(std::move(wc));
        }
    }
    return s;
}

}  // namespace monoqp::test
