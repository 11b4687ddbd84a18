#include "monoqp/hom.hpp"

#include <algorithm>
#include <numeric>

namespace monoqp {

bool is_homomorphism(const MonounaryAlgebra& src, const MonounaryAlgebra& tgt,
                     const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != src.size())
        throw std::invalid_argument("map length does not match the source carrier");
    for (int v : map)
        if (v < 0 || v >= tgt.size())
            throw std::invalid_argument("map value out of the target carrier");
    for (int x = 0; x < src.size(); ++x)
        if (tgt.step(map[x]) != map[src.step(x)]) return false;
    return true;
}

Homomorphism::Homomorphism(MonounaryAlgebra src, MonounaryAlgebra tgt, std::vector<int> m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
    if (!is_homomorphism(source, target, map))
        throw std::invalid_argument("map does not commute with the operations");
}

bool Homomorphism::is_surjective() const {
    std::vector<bool> hit(target.size(), false);
    for (int v : map) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

Homomorphism compose(const Homomorphism& j, const Homomorphism& phi) {
    if (phi.target != j.source)
        throw std::invalid_argument("compose: inner target differs from outer source");
    std::vector<int> m(phi.map.size());
    for (size_t x = 0; x < m.size(); ++x) m[x] = j.map[phi.map[x]];
    return Homomorphism(phi.source, j.target, std::move(m));
}

void for_each_hom(const MonounaryAlgebra& src, const MonounaryAlgebra& tgt,
                  const std::function<bool(const std::vector<int>&)>& visit) {
    const int n = src.size();
    const int m = tgt.size();
    std::vector<int> map(n, -1);
    std::vector<int> trail;
    bool stop = false;

    // Assigning map[x] = v pins the whole forward orbit of x; walk it until
    // an already assigned element either confirms or contradicts.
    auto assign = [&](int x, int v) -> bool {
        size_t mark = trail.size();
        while (map[x] == -1) {
            map[x] = v;
            trail.push_back(x);
            x = src.step(x);
            v = tgt.step(v);
        }
        if (map[x] == v) return true;
        while (trail.size() > mark) {
            map[trail.back()] = -1;
            trail.pop_back();
        }
        return false;
    };

    auto dfs = [&](auto&& self, int from) -> void {
        if (stop) return;
        int x = from;
        while (x < n && map[x] != -1) ++x;
        if (x == n) {
            if (!visit(map)) stop = true;
            return;
        }
        for (int v = 0; v < m && !stop; ++v) {
            size_t mark = trail.size();
            if (assign(x, v)) {
                self(self, x + 1);
                while (trail.size() > mark) {
                    map[trail.back()] = -1;
                    trail.pop_back();
                }
            }
        }
    };
    dfs(dfs, 0);
}

std::vector<Homomorphism> enumerate_homs(const MonounaryAlgebra& src,
                                         const MonounaryAlgebra& tgt) {
    std::vector<Homomorphism> out;
    for_each_hom(src, tgt, [&](const std::vector<int>& map) {
        out.emplace_back(src, tgt, map);
        return true;
    });
    return out;
}

std::vector<Homomorphism> enumerate_epis(const MonounaryAlgebra& src,
                                         const MonounaryAlgebra& tgt) {
    std::vector<Homomorphism> out;
    if (tgt.size() > src.size()) return out;
    for_each_hom(src, tgt, [&](const std::vector<int>& map) {
        std::vector<bool> hit(tgt.size(), false);
        for (int v : map) hit[v] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
            out.emplace_back(src, tgt, map);
        return true;
    });
    return out;
}

std::vector<Homomorphism> enumerate_endos(const MonounaryAlgebra& a) {
    return enumerate_homs(a, a);
}

namespace {

// Normalize class ids to first-occurrence order (restricted growth form).
std::vector<int> normalize_ids(const std::vector<int>& raw, int* count_out) {
    std::vector<int> relabel(raw.size(), -1);
    std::vector<int> out(raw.size());
    int next = 0;
    for (size_t x = 0; x < raw.size(); ++x) {
        if (raw[x] < 0 || raw[x] >= static_cast<int>(raw.size()))
            throw std::invalid_argument("class id out of range");
        if (relabel[raw[x]] == -1) relabel[raw[x]] = next++;
        out[x] = relabel[raw[x]];
    }
    if (count_out) *count_out = next;
    return out;
}

}  // namespace

Congruence::Congruence(MonounaryAlgebra carrier, const std::vector<int>& class_id)
    : carrier_(std::move(carrier)) {
    if (class_id.size() != static_cast<size_t>(carrier_.size()))
        throw std::invalid_argument("class table length does not match the carrier");
    class_id_ = normalize_ids(class_id, &num_classes_);
    for (int x = 0; x < carrier_.size(); ++x)
        for (int y = x + 1; y < carrier_.size(); ++y)
            if (class_id_[x] == class_id_[y] &&
                class_id_[carrier_.step(x)] != class_id_[carrier_.step(y)])
                throw std::invalid_argument("partition is not compatible with the operation");
}

std::vector<std::vector<int>> Congruence::classes() const {
    std::vector<std::vector<int>> out(num_classes_);
    for (int x = 0; x < carrier_.size(); ++x) out[class_id_[x]].push_back(x);
    return out;
}

Congruence kernel(const Homomorphism& h) {
    std::vector<int> ids(h.map.size());
    std::vector<int> relabel(h.target.size(), -1);
    int next = 0;
    for (size_t x = 0; x < h.map.size(); ++x) {
        if (relabel[h.map[x]] == -1) relabel[h.map[x]] = next++;
        ids[x] = relabel[h.map[x]];
    }
    return Congruence(h.source, ids);
}

std::vector<Congruence> congruences(const MonounaryAlgebra& a, int max_n) {
    if (a.size() > max_n)
        throw GuardError("congruence enumeration limited to n <= " + std::to_string(max_n));
    const int n = a.size();
    std::vector<Congruence> out;
    std::vector<int> ids(n, 0);

    auto compatible = [&]() {
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (ids[x] == ids[y] && ids[a.step(x)] != ids[a.step(y)]) return false;
        return true;
    };

    // Restricted growth strings in lexicographic order.
    auto rec = [&](auto&& self, int pos, int max_used) -> void {
        if (pos == n) {
            if (compatible()) out.emplace_back(a, ids);
            return;
        }
        for (int c = 0; c <= max_used + 1 && c < n; ++c) {
            ids[pos] = c;
            self(self, pos + 1, std::max(max_used, c));
        }
    };
    ids[0] = 0;
    rec(rec, 1, 0);
    return out;
}

QuotientAlgebra quotient(const MonounaryAlgebra& a, const Congruence& theta) {
    if (theta.carrier() != a)
        throw std::invalid_argument("congruence belongs to a different algebra");
    const auto& ids = theta.class_ids();
    std::vector<int> q_images(theta.num_classes(), -1);
    for (int x = 0; x < a.size(); ++x) {
        const int cls = ids[x];
        const int img = ids[a.step(x)];
        if (q_images[cls] == -1)
            q_images[cls] = img;
        else if (q_images[cls] != img)
            throw std::invalid_argument("class operation depends on the representative");
    }
    MonounaryAlgebra q(std::move(q_images));
    return QuotientAlgebra{q, Homomorphism(a, q, ids)};
}

namespace {

void check_subalgebra(const MonounaryAlgebra& a, const std::vector<int>& u) {
    if (u.empty()) throw std::invalid_argument("subalgebra must be nonempty");
    std::vector<bool> in(a.size(), false);
    for (int x : u) {
        if (x < 0 || x >= a.size()) throw std::invalid_argument("subalgebra element out of range");
        in[x] = true;
    }
    for (int x : u)
        if (!in[a.step(x)])
            throw std::invalid_argument("set is not closed under the operation: image of " +
                                        std::to_string(x + 1) + " escapes");
}

}  // namespace

Congruence theta_u(const MonounaryAlgebra& a, const std::vector<int>& u) {
    check_subalgebra(a, u);
    const ComponentAnalysis an = analyze(a);
    std::vector<bool> in_u(a.size(), false);
    for (int x : u) in_u[x] = true;

    // One class per component's U-part; everything else stays alone.
    std::vector<int> class_of_comp(an.components.size(), -1);
    std::vector<int> ids(a.size());
    int next = 0;
    for (int x = 0; x < a.size(); ++x) {
        if (in_u[x]) {
            int& c = class_of_comp[an.component_of[x]];
            if (c == -1) c = next++;
            ids[x] = c;
        } else {
            ids[x] = next++;
        }
    }
    return Congruence(a, ids);
}

Congruence theta_u_closure(const MonounaryAlgebra& a, const std::vector<int>& u) {
    check_subalgebra(a, u);
    const int n = a.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };

    const ComponentAnalysis an = analyze(a);
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t k = i + 1; k < u.size(); ++k)
            if (an.component_of[u[i]] == an.component_of[u[k]]) unite(u[i], u[k]);

    // Close under the operation until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (find(x) == find(y) && find(a.step(x)) != find(a.step(y))) {
                    unite(a.step(x), a.step(y));
                    changed = true;
                }
    }

    std::vector<int> ids(n);
    for (int x = 0; x < n; ++x) ids[x] = find(x);
    return Congruence(a, ids);
}

std::vector<std::vector<int>> subalgebras(const MonounaryAlgebra& a, int max_n) {
    if (a.size() > max_n)
        throw GuardError("subalgebra enumeration limited to n <= " + std::to_string(max_n));
    const int n = a.size();
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        bool closed = true;
        for (int x = 0; x < n && closed; ++x)
            if ((mask >> x) & 1u) closed = ((mask >> a.step(x)) & 1u) != 0;
        if (!closed) continue;
        std::vector<int> elts;
        for (int x = 0; x < n; ++x)
            if ((mask >> x) & 1u) elts.push_back(x);
        out.push_back(std::move(elts));
    }
    return out;
}

}  // namespace monoqp
