#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gdpm/bitset.hpp"
#include "gdpm/context.hpp"

namespace gdpm::oracle {

// Brute-force ground truth obtained by powerset sweep. Everything here
// recomputes derivations directly from the raw incidence relation, on
// purpose: the answers must not depend on the code paths they are used to
// check. Exponential by nature, hence the hard limits below.

inline constexpr std::size_t max_attributes = 20;
inline constexpr std::size_t max_objects = 64;

/// All closed itemsets, sorted by (size, lex). Throws when the context
/// exceeds the oracle limits.
std::vector<ItemSet> all_closed(const FormalContext& ctx);

struct GroundTruth {
    /// Closed itemsets grouped by the size of their smallest generators;
    /// index = level, each level sorted by (size, lex).
    std::vector<std::vector<ItemSet>> levels;
    std::unordered_map<ItemSet, unsigned, IdSetHash<item_tag>> level_of;
};

GroundTruth ground_truth(const FormalContext& ctx);

struct EquivalenceClass {
    ItemSet closed;
    ObjectSet ext;
    std::vector<ItemSet> members;   // every generator of the class
    std::vector<ItemSet> keys;      // inclusion-minimal generators
    std::vector<ItemSet> passkeys;  // minimum-size generators
};

/// Full equivalence class of a closed itemset, each list sorted by
/// (size, lex). Throws if `closed` is not closed.
EquivalenceClass equiv_class(const FormalContext& ctx, const ItemSet& closed);

/// Size of the smallest generators, found by scanning subset sizes in
/// ascending order and stopping at the first hit.
unsigned passkey_size(const FormalContext& ctx, const ItemSet& closed);

/// The lexicographically smallest minimum-size generator.
ItemSet lex_smallest_passkey(const FormalContext& ctx, const ItemSet& closed);

struct KeyCount {
    std::uint64_t keys = 0;
    std::uint64_t passkeys = 0;
};

/// Counts minimal and minimum-size generators of one closed itemset without
/// materialising them; usable up to |closed| = 22.
KeyCount count_keys(const FormalContext& ctx, const ItemSet& closed);

/// Materialises the inclusion-minimal generators, sorted by (size, lex).
std::vector<ItemSet> keys_of(const FormalContext& ctx, const ItemSet& closed);

}  // namespace gdpm::oracle
