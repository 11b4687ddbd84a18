#include "monoqp/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace monoqp {

MonounaryAlgebra::MonounaryAlgebra(std::vector<int> images) : images_(std::move(images)) {
    if (images_.empty())
        throw std::invalid_argument("algebra needs a nonempty carrier");
    const int n = size();
    for (int x = 0; x < n; ++x) {
        if (images_[x] < 0 || images_[x] >= n)
            throw std::invalid_argument("image of element " + std::to_string(x) +
                                        " out of range: " + std::to_string(images_[x]));
    }
}

int MonounaryAlgebra::step(int x) const {
    if (x < 0 || x >= size())
        throw std::invalid_argument("element out of range: " + std::to_string(x));
    return images_[x];
}

int MonounaryAlgebra::iterate(int x, long long k) const {
    if (x < 0 || x >= size())
        throw std::invalid_argument("element out of range: " + std::to_string(x));
    if (k < 0) throw std::invalid_argument("negative iteration count");

    // Walk until the orbit repeats, then reduce k modulo the cycle length.
    std::vector<int> seen_at(images_.size(), -1);
    std::vector<int> path;
    int cur = x;
    long long step_no = 0;
    while (step_no < k) {
        if (seen_at[cur] >= 0) {
            const long long tail = seen_at[cur];
            const long long cycle = step_no - tail;
            return path[tail + static_cast<long long>((k - tail) % cycle)];
        }
        seen_at[cur] = static_cast<int>(step_no);
        path.push_back(cur);
        cur = images_[cur];
        ++step_no;
    }
    return cur;
}

MonounaryAlgebra parse_map(int n, const std::vector<int>& one_based_images) {
    if (n <= 0) throw std::invalid_argument("carrier size must be positive");
    if (static_cast<int>(one_based_images.size()) != n)
        throw std::invalid_argument("expected " + std::to_string(n) + " images, got " +
                                    std::to_string(one_based_images.size()));
    std::vector<int> images(n);
    for (int i = 0; i < n; ++i) {
        const int v = one_based_images[i];
        if (v < 1 || v > n)
            throw std::invalid_argument("image " + std::to_string(v) + " at position " +
                                        std::to_string(i + 1) + " out of range 1.." +
                                        std::to_string(n));
        images[i] = v - 1;
    }
    return MonounaryAlgebra(std::move(images));
}

ComponentAnalysis analyze(const MonounaryAlgebra& a) {
    const int n = a.size();
    ComponentAnalysis an;
    an.component_of.assign(n, -1);
    an.is_cyclic.assign(n, false);
    an.is_leaf.assign(n, true);
    an.height.assign(n, 0);
    an.depth.assign(n, 0);
    an.cycle_pos.assign(n, -1);

    for (int x = 0; x < n; ++x) an.is_leaf[a.step(x)] = false;

    // Mark cyclic elements: follow each unexplored orbit; when it closes on
    // an element first seen during the current walk, that suffix is a cycle.
    std::vector<int> state(n, 0);  // 0 fresh, 1 on current walk, 2 done
    std::vector<int> walk;
    for (int x = 0; x < n; ++x) {
        if (state[x] != 0) continue;
        walk.clear();
        int cur = x;
        while (state[cur] == 0) {
            state[cur] = 1;
            walk.push_back(cur);
            cur = a.step(cur);
        }
        if (state[cur] == 1) {
            for (size_t i = walk.size(); i-- > 0;) {
                an.is_cyclic[walk[i]] = true;
                if (walk[i] == cur) break;
            }
        }
        for (int y : walk) state[y] = 2;
    }

    // Components: an element belongs with its eventual cycle. Identify each
    // cycle by its minimal element, then order components by that anchor.
    std::vector<int> anchor(n, -1);
    for (int x = 0; x < n; ++x) {
        if (!an.is_cyclic[x] || anchor[x] >= 0) continue;
        int min_elt = x;
        for (int c = a.step(x); c != x; c = a.step(c)) min_elt = std::min(min_elt, c);
        for (int c = min_elt, first = 1; first || c != min_elt; c = a.step(c), first = 0)
            anchor[c] = min_elt;
    }
    std::vector<int> root(n, -1);  // eventual cycle anchor per element
    for (int x = 0; x < n; ++x) {
        if (root[x] >= 0) continue;
        std::vector<int> chain;
        int cur = x;
        while (root[cur] < 0 && !an.is_cyclic[cur]) {
            chain.push_back(cur);
            cur = a.step(cur);
        }
        const int r = an.is_cyclic[cur] ? anchor[cur] : root[cur];
        for (int y : chain) root[y] = r;
        root[x] = r;
    }
    for (int x = 0; x < n; ++x)
        if (an.is_cyclic[x]) root[x] = anchor[x];

    std::vector<int> anchors;
    for (int x = 0; x < n; ++x)
        if (an.is_cyclic[x] && anchor[x] == x) anchors.push_back(x);
    std::sort(anchors.begin(), anchors.end());

    an.components.resize(anchors.size());
    for (size_t ci = 0; ci < anchors.size(); ++ci) {
        auto& comp = an.components[ci];
        const int start = anchors[ci];
        int pos = 0;
        for (int c = start, first = 1; first || c != start; c = a.step(c), first = 0) {
            comp.cycle.push_back(c);
            an.cycle_pos[c] = pos++;
        }
    }
    std::vector<int> comp_index_of_anchor(n, -1);
    for (size_t ci = 0; ci < anchors.size(); ++ci) comp_index_of_anchor[anchors[ci]] = static_cast<int>(ci);
    for (int x = 0; x < n; ++x) {
        an.component_of[x] = comp_index_of_anchor[root[x]];
        an.components[an.component_of[x]].elements.push_back(x);
    }

    // Heights by walking down; depths bottom-up over the preimage forest.
    for (int x = 0; x < n; ++x) {
        if (an.is_cyclic[x] || an.height[x] > 0) continue;
        std::vector<int> chain;
        int cur = x;
        while (!an.is_cyclic[cur] && an.height[cur] == 0) {
            chain.push_back(cur);
            cur = a.step(cur);
        }
        int h = an.is_cyclic[cur] ? 0 : an.height[cur];
        for (size_t i = chain.size(); i-- > 0;) an.height[chain[i]] = ++h;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int u, int v) { return an.height[u] > an.height[v]; });
    for (int x : order) {
        if (an.is_cyclic[x]) continue;
        const int y = a.step(x);
        if (!an.is_cyclic[y]) an.depth[y] = std::max(an.depth[y], an.depth[x] + 1);
    }

    return an;
}

int cycle_distance(const ComponentAnalysis& an, int ci, int cj) {
    const int n = static_cast<int>(an.is_cyclic.size());
    if (ci < 0 || ci >= n || cj < 0 || cj >= n)
        throw std::invalid_argument("element out of range");
    if (!an.is_cyclic[ci] || !an.is_cyclic[cj])
        throw std::invalid_argument("cycle_distance needs cyclic elements");
    if (an.component_of[ci] != an.component_of[cj])
        throw std::invalid_argument("cycle_distance needs one component");
    const int cn = an.components[an.component_of[ci]].cn();
    return ((an.cycle_pos[cj] - an.cycle_pos[ci]) % cn + cn) % cn;
}

std::vector<int> bunch(const MonounaryAlgebra& a, const ComponentAnalysis& an, int x) {
    if (x < 0 || x >= a.size()) throw std::invalid_argument("element out of range");
    if (an.is_cyclic[x]) throw std::invalid_argument("bunch needs an acyclic element");

    std::vector<std::vector<int>> preimages(a.size());
    for (int y = 0; y < a.size(); ++y) preimages[a.step(y)].push_back(y);

    std::vector<int> out{x};
    for (size_t i = 0; i < out.size(); ++i)
        for (int y : preimages[out[i]]) out.push_back(y);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace monoqp
