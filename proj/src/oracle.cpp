#include "monoqp/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace monoqp {

namespace {

std::optional<std::vector<int>> lift_search(const MonounaryAlgebra& a,
                                            const std::vector<int>& jmap,
                                            const std::vector<std::vector<int>>& fiber,
                                            const std::vector<int>& fmap);

}  // namespace

std::optional<Homomorphism> lift_exists(const MonounaryAlgebra& a, const MonounaryAlgebra& t,
                                        const Homomorphism& j, const Homomorphism& f) {
    if (j.source != a || j.target != t || f.source != a || f.target != t)
        throw std::invalid_argument("lift instance maps must run a -> t");
    if (!j.is_surjective()) throw std::invalid_argument("j must be surjective");

    std::vector<std::vector<int>> fiber(t.size());
    for (int x = 0; x < a.size(); ++x) fiber[j.map[x]].push_back(x);
    auto phi = lift_search(a, j.map, fiber, f.map);
    if (!phi) return std::nullopt;
    return Homomorphism(a, a, std::move(*phi));
}

bool verify_witness(const MonounaryAlgebra& a, const OracleWitness& w) {
    if (!is_homomorphism(a, w.target, w.j.map)) return false;
    if (!is_homomorphism(a, w.target, w.f.map)) return false;
    if (!w.j.is_surjective()) return false;

    const int n = a.size();
    if (n <= 5) {
        // Raw sweep over all n^n candidate maps.
        std::vector<int> m(n, 0);
        while (true) {
            bool endo = true;
            for (int x = 0; x < n && endo; ++x) endo = a.step(m[x]) == m[a.step(x)];
            if (endo) {
                bool lifts = true;
                for (int x = 0; x < n && lifts; ++x) lifts = w.j.map[m[x]] == w.f.map[x];
                if (lifts) return false;
            }
            int pos = n - 1;
            while (pos >= 0 && m[pos] == n - 1) m[pos--] = 0;
            if (pos < 0) break;
            ++m[pos];
        }
        return true;
    }
    return !lift_exists(a, w.target, w.j, w.f).has_value();
}

namespace {

// Raw-map lift search, shared by lift_exists and the oracle loops; fibers
// are the preimage lists of jmap. Candidates for phi(x) come from the
// j-fiber of f(x); the forced forward orbit is checked against the fibers
// on every propagated assignment.
std::optional<std::vector<int>> lift_search(const MonounaryAlgebra& a,
                                            const std::vector<int>& jmap,
                                            const std::vector<std::vector<int>>& fiber,
                                            const std::vector<int>& fmap) {
    const int n = a.size();
    std::vector<int> phi(n, -1);
    std::vector<int> trail;

    auto assign = [&](int x, int v) -> bool {
        size_t mark = trail.size();
        while (phi[x] == -1) {
            if (jmap[v] != fmap[x]) break;
            phi[x] = v;
            trail.push_back(x);
            x = a.step(x);
            v = a.step(v);
        }
        if (phi[x] == v) return true;
        while (trail.size() > mark) {
            phi[trail.back()] = -1;
            trail.pop_back();
        }
        return false;
    };

    auto dfs = [&](auto&& self, int from) -> bool {
        int x = from;
        while (x < n && phi[x] != -1) ++x;
        if (x == n) return true;
        for (int v : fiber[fmap[x]]) {
            size_t mark = trail.size();
            if (assign(x, v)) {
                if (self(self, x + 1)) return true;
                while (trail.size() > mark) {
                    phi[trail.back()] = -1;
                    trail.pop_back();
                }
            }
        }
        return false;
    };

    if (!dfs(dfs, 0)) return std::nullopt;
    return phi;
}

// Shared inner loop: every epimorphism j and homomorphism f onto one target
// must admit a lift. Streams raw maps; materializes only a failing pair.
bool targets_all_lift(const MonounaryAlgebra& a, const MonounaryAlgebra& t,
                      bool canonical_only, const std::vector<int>& projection,
                      OracleStats& stats,
                      std::optional<std::pair<Homomorphism, Homomorphism>>& bad) {
    std::vector<std::vector<int>> jmaps;
    if (canonical_only) {
        jmaps.push_back(projection);
    } else {
        for_each_hom(a, t, [&](const std::vector<int>& m) {
            std::vector<bool> hit(t.size(), false);
            for (int v : m) hit[v] = true;
            if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
                jmaps.push_back(m);
            return true;
        });
    }
    stats.epis += static_cast<long>(jmaps.size());

    long hom_count = 0;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> raw_bad;
    for (const auto& jmap : jmaps) {
        std::vector<std::vector<int>> fiber(t.size());
        for (int x = 0; x < a.size(); ++x) fiber[jmap[x]].push_back(x);
        hom_count = 0;
        for_each_hom(a, t, [&](const std::vector<int>& fmap) {
            ++hom_count;
            ++stats.lift_searches;
            if (!lift_search(a, jmap, fiber, fmap)) {
                raw_bad = std::make_pair(jmap, fmap);
                return false;
            }
            return true;
        });
        if (raw_bad) break;
    }
    stats.homs += hom_count;
    if (!raw_bad) return true;
    bad = std::make_pair(Homomorphism(a, t, raw_bad->first),
                         Homomorphism(a, t, raw_bad->second));
    return false;
}

void check_guard(const MonounaryAlgebra& a, const OracleOptions& opt) {
    if (a.size() > opt.max_n)
        throw GuardError("oracle limited to n <= " + std::to_string(opt.max_n) +
                         " (got n = " + std::to_string(a.size()) + ")");
}

}  // namespace

OracleVerdict oracle_general(const MonounaryAlgebra& a, const OracleOptions& opt) {
    check_guard(a, opt);
    OracleVerdict out;
    for (const Congruence& theta : congruences(a, a.size())) {
        ++out.stats.targets;
        QuotientAlgebra q = quotient(a, theta);
        std::optional<std::pair<Homomorphism, Homomorphism>> bad;
        if (!targets_all_lift(a, q.algebra, opt.canonical_only, q.projection.map, out.stats,
                              bad)) {
            out.quasi_projective = false;
            out.witness = OracleWitness{"congruence", theta.class_ids(), {},
                                        q.algebra, bad->first, bad->second};
            if (!verify_witness(a, *out.witness))
                throw std::logic_error("witness failed re-verification");
            return out;
        }
    }
    return out;
}

OracleVerdict oracle_js(const MonounaryAlgebra& a, const OracleOptions& opt) {
    check_guard(a, opt);
    OracleVerdict out;
    for (const std::vector<int>& u : subalgebras(a, a.size())) {
        ++out.stats.targets;
        const Congruence theta = theta_u(a, u);
        QuotientAlgebra q = quotient(a, theta);
        std::optional<std::pair<Homomorphism, Homomorphism>> bad;
        if (!targets_all_lift(a, q.algebra, opt.canonical_only, q.projection.map, out.stats,
                              bad)) {
            out.quasi_projective = false;
            out.witness = OracleWitness{"subalgebra", theta.class_ids(), u,
                                        q.algebra, bad->first, bad->second};
            if (!verify_witness(a, *out.witness))
                throw std::logic_error("witness failed re-verification");
            return out;
        }
    }
    return out;
}

OracleVerdict oracle_all_targets(const MonounaryAlgebra& a, const OracleOptions& opt) {
    check_guard(a, opt);
    OracleVerdict out;
    for (int m = 1; m <= a.size(); ++m) {
        std::vector<int> images(m, 0);
        while (true) {
            ++out.stats.targets;
            MonounaryAlgebra t{images};
            std::optional<std::pair<Homomorphism, Homomorphism>> bad;
            if (!targets_all_lift(a, t, false, {}, out.stats, bad)) {
                out.quasi_projective = false;
                out.witness = OracleWitness{"abstract", {}, {}, t, bad->first, bad->second};
                if (!verify_witness(a, *out.witness))
                    throw std::logic_error("witness failed re-verification");
                return out;
            }
            int pos = m - 1;
            while (pos >= 0 && images[pos] == m - 1) images[pos--] = 0;
            if (pos < 0) break;
            ++images[pos];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

namespace {

// Target of the branch-swapping recipes: a fixed point (element 0) with one
// or two simple chains attached to it. chain lengths in `lens`; returns the
// first element index of each chain.
MonounaryAlgebra chain_target(const std::vector<int>& lens, std::vector<int>& starts) {
    std::vector<int> images{0};
    starts.clear();
    for (int len : lens) {
        starts.push_back(static_cast<int>(images.size()));
        images.push_back(0);  // chain bottom points at the fixed point
        for (int i = 1; i < len; ++i)
            images.push_back(static_cast<int>(images.size()) - 1);
    }
    return MonounaryAlgebra(std::move(images));
}

// A disjoint cycle appended to an image table; returns the index of its
// first element (the offset-0 cyclic element).
int append_cycle(std::vector<int>& images, int len) {
    const int base = static_cast<int>(images.size());
    for (int i = 0; i < len; ++i) images.push_back(base + (i + 1) % len);
    return base;
}

// A simple chain whose bottom points at `anchor`; returns first element.
int append_chain(std::vector<int>& images, int len, int anchor) {
    const int base = static_cast<int>(images.size());
    images.push_back(anchor);
    for (int i = 1; i < len; ++i) images.push_back(base + i - 1);
    return base;
}

CounterexampleFixture finish(MonounaryAlgebra a, MonounaryAlgebra t, std::vector<int> fmap,
                             std::vector<int> jmap) {
    Homomorphism f(a, t, std::move(fmap));
    Homomorphism j(a, t, std::move(jmap));
    if (!j.is_surjective()) throw std::logic_error("fixture j is not surjective");
    if (lift_exists(a, t, j, f)) throw std::logic_error("fixture admits a lift");
    return CounterexampleFixture{std::move(a), std::move(t), std::move(f), std::move(j)};
}

CounterexampleFixture fixture_unequal_cycles(const FixtureParams& p) {
    if (p.cycle_len < 1 || p.cycle_len_2 < 1 || p.cycle_len == p.cycle_len_2)
        throw std::invalid_argument("needs two distinct positive cycle lengths");
    std::vector<int> images;
    append_cycle(images, p.cycle_len);
    const int c2 = append_cycle(images, p.cycle_len_2);
    MonounaryAlgebra a(images);
    MonounaryAlgebra t({0, 1});  // two fixed points
    const int n = a.size();
    std::vector<int> fmap(n), jmap(n);
    for (int x = 0; x < n; ++x) {
        fmap[x] = x < c2 ? 0 : 1;
        jmap[x] = x < c2 ? 1 : 0;
    }
    return finish(std::move(a), std::move(t), std::move(fmap), std::move(jmap));
}

// Two shapes carry this violation: a branching point strictly above the
// cycle (stem_len >= 1), and several branches of length >= 2 sharing one
// point of a cycle of length >= 2 (stem_len == 0). The first falls to a
// target chain both branches must map onto in parallel; the second falls to
// the quotient folding one branch into the cycle, against a shifted image.
CounterexampleFixture fixture_multi_branch_bunch(const FixtureParams& p) {
    if (p.stem_len == 0) {
        if (p.cycle_len < 2 || p.branch_len < 2)
            throw std::invalid_argument(
                "a shared-point sheaf needs cycle and branch length >= 2 to fail");
        std::vector<int> images;
        append_cycle(images, p.cycle_len);
        const int b1 = append_chain(images, p.branch_len, 0);
        const int b2 = append_chain(images, p.branch_len, 0);
        MonounaryAlgebra a(images);

        std::vector<int> starts;
        MonounaryAlgebra t = chain_target({p.branch_len}, starts);
        std::vector<int> fmap(a.size(), 0), jmap(a.size(), 0);
        for (int i = 0; i < p.branch_len; ++i) jmap[b2 + i] = starts[0] + i;
        for (int i = 0; i < p.branch_len; ++i) fmap[b2 + i] = starts[0] + i;
        for (int i = 1; i < p.branch_len; ++i) fmap[b1 + i] = starts[0] + i - 1;
        return finish(std::move(a), std::move(t), std::move(fmap), std::move(jmap));
    }

    if (p.cycle_len < 1 || p.stem_len < 1 || p.branch_len < 1 || p.branch_len_2 < 1)
        throw std::invalid_argument("cycle, stem and both branches need positive length");
    const int long_len = std::max(p.branch_len, p.branch_len_2);
    const int short_len = std::min(p.branch_len, p.branch_len_2);

    std::vector<int> images;
    append_cycle(images, p.cycle_len);
    const int stem = append_chain(images, p.stem_len, 0);
    const int stem_top = stem + p.stem_len - 1;
    const int b1 = append_chain(images, long_len, stem_top);
    const int b2 = append_chain(images, short_len, stem_top);
    MonounaryAlgebra a(images);

    std::vector<int> starts;
    MonounaryAlgebra t = chain_target({long_len}, starts);
    const int n = a.size();
    std::vector<int> fmap(n, 0), jmap(n, 0);
    for (int i = 0; i < long_len; ++i) {
        fmap[b1 + i] = starts[0] + i;
        jmap[b1 + i] = starts[0] + i;
    }
    for (int i = 0; i < short_len; ++i) jmap[b2 + i] = starts[0] + i;
    return finish(std::move(a), std::move(t), std::move(fmap), std::move(jmap));
}

CounterexampleFixture fixture_unequal_branch_lengths(const FixtureParams& p) {
    if (p.cycle_len < 1 || p.branch_len < 1 || p.branch_len >= p.branch_len_2)
        throw std::invalid_argument("needs positive branch lengths with the second strictly longer");
    const int n_len = p.branch_len, m_len = p.branch_len_2;

    std::vector<int> images;
    const int c1 = append_cycle(images, p.cycle_len);
    const int b1 = append_chain(images, n_len, c1);
    const int c2 = append_cycle(images, p.cycle_len);
    const int b2 = append_chain(images, m_len, c2);
    MonounaryAlgebra a(images);

    std::vector<int> starts;
    MonounaryAlgebra t = chain_target({n_len}, starts);
    std::vector<int> fmap(a.size(), 0), jmap(a.size(), 0);
    for (int i = 0; i < n_len; ++i) {
        fmap[b1 + i] = starts[0] + i;
        jmap[b2 + (m_len - n_len) + i] = starts[0] + i;  // top of the long branch
    }
    return finish(std::move(a), std::move(t), std::move(fmap), std::move(jmap));
}

// Kills any pair of branches at distinct attachment points, half a cycle
// apart or not: j keeps the branches on separate target branches while f
// sends both onto the first one, so a lift would have to fix the cycle and
// rotate it at the same time.
CounterexampleFixture fixture_non_antipodal_pair(const FixtureParams& p) {
    const int m = p.cycle_len, k = p.offset_1, l = p.offset_2;
    if (m < 1 || p.branch_len < 1) throw std::invalid_argument("needs positive sizes");
    if (!(0 <= k && k < l && l < m))
        throw std::invalid_argument("needs two distinct offsets inside the cycle");

    std::vector<int> images;
    append_cycle(images, m);
    const int b1 = append_chain(images, p.branch_len, k);
    const int b2 = append_chain(images, p.branch_len, l);
    MonounaryAlgebra a(images);

    std::vector<int> starts;
    MonounaryAlgebra t = chain_target({p.branch_len, p.branch_len}, starts);
    std::vector<int> fmap(a.size(), 0), jmap(a.size(), 0);
    for (int i = 0; i < p.branch_len; ++i) {
        jmap[b1 + i] = starts[0] + i;  // j keeps the branches apart
        jmap[b2 + i] = starts[1] + i;
        fmap[b1 + i] = starts[0] + i;  // f folds both onto the first
        fmap[b2 + i] = starts[0] + i;
    }
    return finish(std::move(a), std::move(t), std::move(fmap), std::move(jmap));
}

CounterexampleFixture fixture_too_many_branches(const FixtureParams& p) {
    const int m = p.cycle_len;
    const std::vector<int> offs{p.offset_1, p.offset_2, p.offset_3};
    if (m < 1 || p.branch_len < 1) throw std::invalid_argument("needs positive sizes");
    for (int o : offs)
        if (o < 0 || o >= m) throw std::invalid_argument("offset outside the cycle");
    if (offs[0] == offs[1] && offs[1] == offs[2])
        throw std::invalid_argument("three branches at one point are admissible");

    std::vector<int> images;
    append_cycle(images, m);
    std::vector<int> starts_a(3);
    for (int b = 0; b < 3; ++b) starts_a[b] = append_chain(images, p.branch_len, offs[b]);
    MonounaryAlgebra a(images);

    // Pick branches (u, v) for f and (x, y) for j whose forced cycle
    // rotations disagree.
    int bu = -1, bv = -1, bx = -1, by = -1;
    for (int u = 0; u < 3 && bu < 0; ++u)
        for (int v = 0; v < 3 && bu < 0; ++v) {
            if (u == v) continue;
            for (int x = 0; x < 3 && bu < 0; ++x)
                for (int y = 0; y < 3; ++y) {
                    if (x == y) continue;
                    const int d = (offs[x] - offs[u]) - (offs[y] - offs[v]);
                    if (((d % m) + m) % m != 0) {
                        bu = u; bv = v; bx = x; by = y;
                        break;
                    }
                }
        }
    if (bu < 0) throw std::invalid_argument("offsets admit every branch relocation");

    std::vector<int> starts;
    MonounaryAlgebra t = chain_target({p.branch_len, p.branch_len}, starts);
    std::vector<int> fmap(a.size(), 0), jmap(a.size(), 0);
    for (int i = 0; i < p.branch_len; ++i) {
        fmap[starts_a[bu] + i] = starts[0] + i;
        fmap[starts_a[bv] + i] = starts[1] + i;
        jmap[starts_a[bx] + i] = starts[0] + i;
        jmap[starts_a[by] + i] = starts[1] + i;
    }
    return finish(std::move(a), std::move(t), std::move(fmap), std::move(jmap));
}

// A shared-point branch pair in one component next to a lone branch in
// another: j pulls the other component in for one target branch, forcing a
// lift to map one cycle into two components at once.
CounterexampleFixture fixture_extra_branches(const FixtureParams& p) {
    const int m = p.cycle_len, k = p.offset_1;
    if (m < 1 || p.branch_len < 1) throw std::invalid_argument("needs positive sizes");
    if (!(0 <= k && k < m)) throw std::invalid_argument("offset outside the cycle");

    std::vector<int> images;
    append_cycle(images, m);
    const int b1 = append_chain(images, p.branch_len, k);
    const int b2 = append_chain(images, p.branch_len, k);
    const int c2 = append_cycle(images, m);
    const int b3 = append_chain(images, p.branch_len, c2);
    MonounaryAlgebra a(images);

    std::vector<int> starts;
    MonounaryAlgebra t = chain_target({p.branch_len, p.branch_len}, starts);
    std::vector<int> fmap(a.size(), 0), jmap(a.size(), 0);
    for (int i = 0; i < p.branch_len; ++i) {
        fmap[b1 + i] = starts[0] + i;  // f uses the pair in one component
        fmap[b2 + i] = starts[1] + i;
        jmap[b1 + i] = starts[1] + i;  // j pulls the other component in
        jmap[b3 + i] = starts[0] + i;
    }
    return finish(std::move(a), std::move(t), std::move(fmap), std::move(jmap));
}

}  // namespace

CounterexampleFixture counterexample_fixture(QpViolation kind, const FixtureParams& p) {
    switch (kind) {
        case QpViolation::UnequalCycleLengths: return fixture_unequal_cycles(p);
        case QpViolation::MultiBranchBunch: return fixture_multi_branch_bunch(p);
        case QpViolation::UnequalBranchLengths: return fixture_unequal_branch_lengths(p);
        case QpViolation::NonAntipodalBranchPair: return fixture_non_antipodal_pair(p);
        case QpViolation::TooManyBranchesInComponent: return fixture_too_many_branches(p);
        case QpViolation::ExtraBranchesBesidePair: return fixture_extra_branches(p);
        default:
            throw std::invalid_argument(
                "violation has no finite counterexample; the schema decider covers it");
    }
}

}  // namespace monoqp
