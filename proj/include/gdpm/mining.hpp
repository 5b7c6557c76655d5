#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "gdpm/bitset.hpp"
#include "gdpm/context.hpp"
#include "gdpm/settrie.hpp"

namespace gdpm {

/// Which trie the duplicate test runs against. Both variants emit the same
/// structure in the same order; they differ only in what they hash the
/// equivalence classes by.
enum class Variant {
    intents,  // candidate closure first, dedup on intents
    extents,  // candidate extent first, closure only for new extents
};

const char* to_string(Variant v);

/// One closed itemset together with the generator that discovered it.
/// The recorded passkey is a minimum-size generator: its size equals the
/// level, and the level of a closed itemset is the size of its smallest
/// generators.
struct LevelEntry {
    ItemSet closed;
    ItemSet passkey;
    ObjectSet ext;
    std::uint64_t support = 0;
};

struct LevelStats {
    std::size_t entries = 0;
    std::size_t trie_nodes = 0;  // trie size after the level was absorbed
    double seconds = 0.0;
};

inline constexpr unsigned kNoLevelCap = std::numeric_limits<unsigned>::max();

struct MineOptions {
    Variant variant = Variant::intents;
    unsigned k_max = kNoLevelCap;  // stop after emitting this level
};

/// Closure structure: all closed itemsets grouped by level. Level k holds
/// the closed itemsets whose smallest generators have size k; level 0 is the
/// closure of the empty itemset. `ci` is the deepest nonempty level, or the
/// level cap when the run was truncated (then only a lower bound).
struct ClosureStructure {
    std::vector<std::vector<LevelEntry>> levels;
    unsigned ci = 0;
    Variant variant = Variant::intents;
    bool truncated = false;
    std::vector<LevelStats> level_stats;
    std::size_t trie_nodes = 0;

    std::uint64_t closed_count() const;
};

/// Expands one level: for every entry of `prev` and every attribute not in
/// its closure, computes the candidate closure and keeps the ones whose
/// intent is new to the trie.
std::vector<LevelEntry> step_intents(const FormalContext& ctx,
                                     const std::vector<LevelEntry>& prev, SetTrie& trie);

/// Same expansion, but keyed by extents: the candidate extent decides
/// novelty and the intent is computed only for new extents.
std::vector<LevelEntry> step_extents(const FormalContext& ctx,
                                     const std::vector<LevelEntry>& prev, SetTrie& trie);

/// Sink invoked per completed level. Only the previous level is retained by
/// the miner itself; whoever needs more keeps the entries handed over here.
using LevelSink = std::function<void(unsigned level, std::vector<LevelEntry>&& entries,
                                     const LevelStats& stats)>;

/// Runs the level-wise computation, streaming each finished level into
/// `sink`. Returns the resulting index: (deepest level emitted, truncated).
std::pair<unsigned, bool> mine_stream(const FormalContext& ctx, const MineOptions& options,
                                      const LevelSink& sink);

/// Convenience wrapper collecting every level into a ClosureStructure.
ClosureStructure mine(const FormalContext& ctx, const MineOptions& options = {});

struct ClosureIndexResult {
    unsigned value = 0;
    bool lower_bound_only = false;  // truncated run: the true index may be larger
};

ClosureIndexResult closure_index(const ClosureStructure& s);

/// 2^ci <= number of closed itemsets <= 2^min(|G|, |M|). Bounds are kept as
/// exponents next to their double approximations since they overflow fast.
struct SizeBounds {
    unsigned lower_exponent = 0;
    unsigned upper_exponent = 0;
    double lower = 1.0;
    double upper = 1.0;
    std::uint64_t actual = 0;
};

/// Requires a complete (non-truncated) structure.
SizeBounds size_bounds(const ClosureStructure& s, const FormalContext& ctx);

}  // namespace gdpm
