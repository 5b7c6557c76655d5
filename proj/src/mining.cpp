#include "gdpm/mining.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace gdpm {

const char* to_string(Variant v) {
    return v == Variant::intents ? "int" : "ext";
}

std::uint64_t ClosureStructure::closed_count() const {
    std::uint64_t n = 0;
    for (const auto& level : levels) n += level.size();
    return n;
}

namespace {

// Candidate generation shared by both variants: parents in discovery order,
// augmenting attributes in ascending order. Variants only differ in the key
// offered to the trie, so the surviving candidates and their order coincide.
template <typename TryCandidate>
void expand(const FormalContext& ctx, const std::vector<LevelEntry>& prev, TryCandidate&& apply) {
    const std::size_t attrs = ctx.attribute_count();
    for (const auto& parent : prev) {
        for (std::uint32_t m = 0; m < attrs; ++m) {
            if (parent.closed.test(m)) continue;
            apply(parent, m);
        }
    }
}

}  // namespace

std::vector<LevelEntry> step_intents(const FormalContext& ctx,
                                     const std::vector<LevelEntry>& prev, SetTrie& trie) {
    std::vector<LevelEntry> next;
    std::vector<std::uint32_t> scratch;
    expand(ctx, prev, [&](const LevelEntry& parent, std::uint32_t m) {
        ObjectSet ext = parent.ext & ctx.col(m);
        ItemSet closed = intent(ctx, ext);
        closed.copy_ids_into(scratch);
        if (!trie.insert(scratch)) return;
        LevelEntry e;
        e.passkey = parent.passkey;
        e.passkey.set(m);
        e.support = ext.count();
        e.closed = std::move(closed);
        e.ext = std::move(ext);
        next.push_back(std::move(e));
    });
    return next;
}

std::vector<LevelEntry> step_extents(const FormalContext& ctx,
                                     const std::vector<LevelEntry>& prev, SetTrie& trie) {
    std::vector<LevelEntry> next;
    std::vector<std::uint32_t> scratch;
    expand(ctx, prev, [&](const LevelEntry& parent, std::uint32_t m) {
        ObjectSet ext = parent.ext & ctx.col(m);
        ext.copy_ids_into(scratch);
        if (!trie.insert(scratch)) return;
        LevelEntry e;
        e.passkey = parent.passkey;
        e.passkey.set(m);
        e.support = ext.count();
        e.closed = intent(ctx, ext);  // only paid for new extents
        e.ext = std::move(ext);
        next.push_back(std::move(e));
    });
    return next;
}

std::pair<unsigned, bool> mine_stream(const FormalContext& ctx, const MineOptions& options,
                                      const LevelSink& sink) {
    using clock = std::chrono::steady_clock;
    SetTrie trie;
    std::vector<std::uint32_t> scratch;

    auto started = clock::now();
    std::vector<LevelEntry> current(1);
    current[0].ext = ctx.all_objects();
    current[0].closed = intent(ctx, current[0].ext);
    current[0].passkey = ItemSet(ctx.attribute_count());
    current[0].support = current[0].ext.count();
    if (options.variant == Variant::intents)
        current[0].closed.copy_ids_into(scratch);
    else
        current[0].ext.copy_ids_into(scratch);
    trie.insert(scratch);

    double seconds = std::chrono::duration<double>(clock::now() - started).count();

    unsigned k = 0;
    for (;;) {
        LevelStats stats;
        stats.entries = current.size();
        stats.trie_nodes = trie.node_count();
        stats.seconds = seconds;
        if (k >= options.k_max) {
            sink(k, std::move(current), stats);
            return {k, true};
        }
        started = clock::now();
        std::vector<LevelEntry> next = options.variant == Variant::intents
                                           ? step_intents(ctx, current, trie)
                                           : step_extents(ctx, current, trie);
        seconds = std::chrono::duration<double>(clock::now() - started).count();
        sink(k, std::move(current), stats);
        if (next.empty()) return {k, false};
        current = std::move(next);
        ++k;
    }
}

ClosureStructure mine(const FormalContext& ctx, const MineOptions& options) {
    ClosureStructure s;
    s.variant = options.variant;
    auto [ci, truncated] = mine_stream(
        ctx, options, [&s](unsigned, std::vector<LevelEntry>&& entries, const LevelStats& stats) {
            s.levels.push_back(std::move(entries));
            s.level_stats.push_back(stats);
        });
    s.ci = ci;
    s.truncated = truncated;
    s.trie_nodes = s.level_stats.empty() ? 0 : s.level_stats.back().trie_nodes;
    return s;
}

ClosureIndexResult closure_index(const ClosureStructure& s) {
    return {s.ci, s.truncated};
}

SizeBounds size_bounds(const ClosureStructure& s, const FormalContext& ctx) {
    if (s.truncated)
        throw std::invalid_argument("size bounds need a complete run, not a truncated one");
    SizeBounds b;
    b.lower_exponent = s.ci;
    b.upper_exponent = static_cast<unsigned>(std::min(ctx.object_count(), ctx.attribute_count()));
    b.lower = std::ldexp(1.0, static_cast<int>(b.lower_exponent));
    b.upper = std::ldexp(1.0, static_cast<int>(b.upper_exponent));
    b.actual = s.closed_count();
    return b;
}

}  // namespace gdpm
