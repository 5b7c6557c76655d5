#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

#include "gdpm/context.hpp"

namespace fixtures {

// Six objects over attributes a..f (ids 0..5); the worked example used
// throughout the tests. Expected closure structure, verified by hand and
// against the brute-force oracle:
//   level 0: {}
//   level 1: a, b, c, d, e, bef(f)
//   level 2: abc(ab), ac, ad, ade(ae), abcdef(af), bdef(bd), cd, de
//   level 3: acd
inline gdpm::FormalContext running_example() {
    return gdpm::FormalContext::from_rows(
        6,
        {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {2, 3}, {1, 3, 4, 5}, {1, 4, 5}},
        {"g1", "g2", "g3", "g4", "g5", "g6"},
        {"a", "b", "c", "d", "e", "f"});
}

inline gdpm::ItemSet items(std::size_t universe, std::initializer_list<std::uint32_t> ids) {
    return gdpm::ItemSet::of(universe, ids);
}

inline gdpm::ObjectSet objects(std::size_t universe, std::initializer_list<std::uint32_t> ids) {
    return gdpm::ObjectSet::of(universe, ids);
}

// Unbiased bounded draw used everywhere randomness must reproduce exactly;
// mt19937_64 output is pinned by the standard, the distributions are not.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    for (;;) {
        const std::uint64_t x = rng();
        const std::uint64_t r = x % n;
        if (x - r <= std::numeric_limits<std::uint64_t>::max() - (n - 1)) return r;
    }
}

inline gdpm::FormalContext random_context(std::mt19937_64& rng, std::size_t max_objects,
                                          std::size_t max_attributes) {
    const std::size_t g = 1 + bounded(rng, max_objects);
    const std::size_t m = 1 + bounded(rng, max_attributes);
    const std::uint64_t permille = 100 + bounded(rng, 801);  // density 0.1 .. 0.9
    std::vector<std::vector<std::uint32_t>> rows(g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::uint32_t j = 0; j < m; ++j)
            if (bounded(rng, 1000) < permille) rows[i].push_back(j);
    return gdpm::FormalContext::from_rows(m, rows);
}

}  // namespace fixtures
