#include "monoqp/schema.hpp"

#include <algorithm>
#include <numeric>

namespace monoqp {

long BranchTree::node_count() const {
    long total = 1;
    for (const auto& c : children) total += c.node_count();
    return total;
}

namespace {

// Injective encoding of a tree; children are sorted by their own encodings,
// so equal encodings mean equal canonical trees.
std::string encode_tree(const BranchTree& t) {
    std::vector<std::string> kids;
    kids.reserve(t.children.size());
    for (const auto& c : t.children) kids.push_back(encode_tree(c));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    if (t.infinite_tail) out += '!';
    for (const auto& k : kids) out += k;
    out += ')';
    return out;
}

BranchTree sort_tree(const BranchTree& t) {
    BranchTree out;
    out.infinite_tail = t.infinite_tail;
    out.children.reserve(t.children.size());
    for (const auto& c : t.children) out.children.push_back(sort_tree(c));
    std::sort(out.children.begin(), out.children.end(),
              [](const BranchTree& a, const BranchTree& b) {
                  return encode_tree(a) < encode_tree(b);
              });
    return out;
}

bool tree_empty(const BranchTree& t) { return t.children.empty() && !t.infinite_tail; }

std::string encode_with_cycle(const WithCycle& c) {
    std::string out = "C" + std::to_string(c.cn) + "{";
    for (const auto& [off, tree] : c.attachments)
        out += "o" + std::to_string(off) + ":" + encode_tree(tree);
    out += '}';
    return out;
}

std::string encode_cycle_free(const CycleFree& c) {
    std::string out = c.backward_infinite ? "Z{" : "N{";
    for (const auto& [idx, tree] : c.decorations)
        out += "i" + std::to_string(idx) + ":" + encode_tree(tree);
    out += '}';
    return out;
}

std::string encode_component(const ComponentSchema& c) {
    if (const auto* wc = std::get_if<WithCycle>(&c)) return encode_with_cycle(*wc);
    return encode_cycle_free(std::get<CycleFree>(c));
}

WithCycle canonicalize_with_cycle(const WithCycle& in) {
    WithCycle out;
    out.cn = in.cn;
    for (const auto& [off, tree] : in.attachments) {
        if (tree_empty(tree)) continue;
        out.attachments.emplace(off, sort_tree(tree));
    }
    if (out.attachments.empty()) return out;

    // The canonical rotation puts some attachment at offset 0; among those,
    // keep the least encoded offset/tree sequence.
    std::vector<std::pair<int, std::string>> encs;
    for (const auto& [off, tree] : out.attachments) encs.emplace_back(off, encode_tree(tree));

    int best_origin = encs.front().first;
    std::string best_key;
    for (const auto& [origin, unused] : encs) {
        std::vector<std::pair<int, std::string>> shifted;
        for (const auto& [off, enc] : encs)
            shifted.emplace_back(((off - origin) % out.cn + out.cn) % out.cn, enc);
        std::sort(shifted.begin(), shifted.end());
        std::string key;
        for (const auto& [off, enc] : shifted) key += "o" + std::to_string(off) + ":" + enc;
        if (best_key.empty() || key < best_key) {
            best_key = std::move(key);
            best_origin = origin;
        }
    }

    std::map<int, BranchTree> rotated;
    for (auto& [off, tree] : out.attachments)
        rotated.emplace(((off - best_origin) % out.cn + out.cn) % out.cn, std::move(tree));
    out.attachments = std::move(rotated);
    return out;
}

CycleFree canonicalize_cycle_free(const CycleFree& in) {
    CycleFree out;
    out.backward_infinite = in.backward_infinite;
    for (const auto& [idx, tree] : in.decorations) {
        if (tree_empty(tree)) continue;
        out.decorations.emplace(idx, sort_tree(tree));
    }

    // A decoration at the backward end whose tree is a bare chain is not a
    // second branch, just extra spine below index 0. Fold it in; a bare
    // infinite tail at the end turns the chain bi-infinite.
    while (!out.backward_infinite) {
        auto it = out.decorations.find(0);
        if (it == out.decorations.end()) break;
        BranchTree& t = it->second;
        if (t.children.empty() && t.infinite_tail) {
            out.decorations.erase(it);
            std::map<long, BranchTree> shifted;  // indexes become arbitrary-anchor
            for (auto& [idx, tree] : out.decorations) shifted.emplace(idx, std::move(tree));
            out.decorations = std::move(shifted);
            out.backward_infinite = true;
            break;
        }
        if (t.children.size() != 1 || t.infinite_tail) break;
        long absorbed = 0;
        BranchTree* node = &t.children.front();
        while (node->children.size() == 1 && !node->infinite_tail) {
            node = &node->children.front();
            ++absorbed;
        }
        if (!node->children.empty()) break;  // junction deeper in; keep as is
        ++absorbed;                          // the last chain node
        const bool tail = node->infinite_tail;
        std::map<long, BranchTree> shifted;
        for (auto& [idx, tree] : out.decorations)
            if (idx != 0) shifted.emplace(idx + absorbed, std::move(tree));
        out.decorations = std::move(shifted);
        if (tail) out.backward_infinite = true;
        if (out.backward_infinite) break;
    }

    if (out.backward_infinite && !out.decorations.empty()) {
        const long min_idx = out.decorations.begin()->first;
        if (min_idx != 0) {
            std::map<long, BranchTree> shifted;
            for (auto& [idx, tree] : out.decorations)
                shifted.emplace(idx - min_idx, std::move(tree));
            out.decorations = std::move(shifted);
        }
    }
    return out;
}

}  // namespace

void validate(const Schema& s) {
    if (s.components.empty()) throw std::invalid_argument("schema needs a component");
    for (const auto& comp : s.components) {
        if (const auto* wc = std::get_if<WithCycle>(&comp)) {
            if (wc->cn < 1) throw std::invalid_argument("cycle length must be positive");
            for (const auto& [off, tree] : wc->attachments) {
                (void)tree;
                if (off < 0 || off >= wc->cn)
                    throw std::invalid_argument("attachment offset " + std::to_string(off) +
                                                " outside cycle of length " +
                                                std::to_string(wc->cn));
            }
        } else {
            const auto& cf = std::get<CycleFree>(comp);
            if (!cf.backward_infinite) {
                for (const auto& [idx, tree] : cf.decorations) {
                    (void)tree;
                    if (idx < 0)
                        throw std::invalid_argument(
                            "negative decoration index on a chain with a backward end");
                }
            }
        }
    }
}

Schema canonicalize(const Schema& s) {
    validate(s);
    Schema out;
    out.components.reserve(s.components.size());
    for (const auto& comp : s.components) {
        if (const auto* wc = std::get_if<WithCycle>(&comp))
            out.components.emplace_back(canonicalize_with_cycle(*wc));
        else
            out.components.emplace_back(canonicalize_cycle_free(std::get<CycleFree>(comp)));
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const ComponentSchema& a, const ComponentSchema& b) {
                  return encode_component(a) < encode_component(b);
              });
    return out;
}

std::string schema_key(const Schema& s) {
    std::string out;
    for (const auto& comp : s.components) {
        out += encode_component(comp);
        out += ';';
    }
    return out;
}

namespace {

struct TreeFacts {
    long length = 0;       // longest root-to-leaf path in nodes below the root
    bool simple = true;    // <= 1 upward continuation everywhere
    long branches = 0;     // leaves plus tails
};

TreeFacts tree_facts(const BranchTree& t) {
    TreeFacts f;
    const long ways = static_cast<long>(t.children.size()) + (t.infinite_tail ? 1 : 0);
    if (ways > 1) f.simple = false;
    if (t.infinite_tail) {
        f.length = kInfinite;
        f.branches += 1;
    }
    if (ways == 0) f.branches = 1;  // the root alone is a leaf
    for (const auto& c : t.children) {
        TreeFacts cf = tree_facts(c);
        if (!cf.simple) f.simple = false;
        f.branches += cf.branches;
        const long via = is_infinite(cf.length) ? kInfinite : cf.length + 1;
        if (is_infinite(via) || (!is_infinite(f.length) && via > f.length)) f.length = via;
    }
    return f;
}

}  // namespace

std::vector<BranchRecord> branch_inventory(const Schema& s) {
    validate(s);
    std::vector<BranchRecord> out;
    for (size_t ci = 0; ci < s.components.size(); ++ci) {
        const auto& comp = s.components[ci];
        if (const auto* wc = std::get_if<WithCycle>(&comp)) {
            for (const auto& [off, tree] : wc->attachments) {
                TreeFacts f = tree_facts(tree);
                out.push_back({static_cast<int>(ci), ComponentKind::WithCycle, off,
                               f.length, f.simple, f.branches});
            }
        } else {
            const auto& cf = std::get<CycleFree>(comp);
            for (const auto& [idx, tree] : cf.decorations) {
                TreeFacts f = tree_facts(tree);
                out.push_back({static_cast<int>(ci), ComponentKind::CycleFree, idx,
                               f.length, f.simple, f.branches});
            }
        }
    }
    return out;
}

Schema to_schema(const MonounaryAlgebra& a) {
    const ComponentAnalysis an = analyze(a);
    const int n = a.size();

    std::vector<std::vector<int>> preimages(n);
    for (int x = 0; x < n; ++x) preimages[a.step(x)].push_back(x);

    // Preimage tree of the acyclic elements above one element.
    auto build_tree = [&](auto&& self, int elt) -> BranchTree {
        BranchTree t;
        for (int y : preimages[elt])
            if (!an.is_cyclic[y]) t.children.push_back(self(self, y));
        return t;
    };

    Schema s;
    for (const auto& comp : an.components) {
        WithCycle wc;
        wc.cn = comp.cn();
        for (int pos = 0; pos < comp.cn(); ++pos) {
            BranchTree t = build_tree(build_tree, comp.cycle[pos]);
            if (!tree_empty(t)) wc.attachments.emplace(pos, std::move(t));
        }
        s.components.emplace_back(std::move(wc));
    }
    return s;
}

long element_count(const Schema& s) {
    long total = 0;
    for (const auto& comp : s.components) {
        if (const auto* wc = std::get_if<WithCycle>(&comp)) {
            total += wc->cn;
            for (const auto& [off, tree] : wc->attachments) {
                (void)off;
                TreeFacts f = tree_facts(tree);
                if (is_infinite(f.length)) return kInfinite;
                total += tree.node_count() - 1;  // the root is the cyclic element
            }
        } else {
            return kInfinite;  // chains are infinite by construction
        }
    }
    return total;
}

std::string canonical_form(const MonounaryAlgebra& a) {
    return schema_key(canonicalize(to_schema(a)));
}

}  // namespace monoqp
