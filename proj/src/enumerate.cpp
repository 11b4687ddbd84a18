#include "monoqp/enumerate.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "monoqp/schema.hpp"

namespace monoqp {

AlgebraCatalog all_algebras(int n, int max_n) {
    if (n < 1) throw std::invalid_argument("carrier size must be positive");
    if (n > max_n)
        throw GuardError("exhaustive enumeration limited to n <= " + std::to_string(max_n));

    std::map<std::string, MonounaryAlgebra> by_key;
    std::vector<int> images(n, 0);
    while (true) {
        MonounaryAlgebra a{images};
        by_key.try_emplace(canonical_form(a), a);  // first hit is the lex-least table
        int pos = n - 1;
        while (pos >= 0 && images[pos] == n - 1) images[pos--] = 0;
        if (pos < 0) break;
        ++images[pos];
    }

    AlgebraCatalog cat;
    cat.n = n;
    for (auto& [key, alg] : by_key) {
        cat.keys.push_back(key);
        cat.representatives.push_back(std::move(alg));
    }
    return cat;
}

namespace {

// Rejection-sampled uniform draw; mt19937_64 output is specified exactly, so
// results are identical on every platform.
int uniform_below(std::mt19937_64& rng, int n) {
    const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = rng();
    while (v >= bound) v = rng();
    return static_cast<int>(v % n);
}

}  // namespace

MonounaryAlgebra random_algebra(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("carrier size must be positive");
    std::mt19937_64 rng(seed);
    std::vector<int> images(n);
    for (int i = 0; i < n; ++i) images[i] = uniform_below(rng, n);
    return MonounaryAlgebra(std::move(images));
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace monoqp
