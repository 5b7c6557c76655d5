#include "gdpm/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace gdpm::oracle {

namespace {

void check_limits(const FormalContext& ctx) {
    if (ctx.attribute_count() > max_attributes)
        throw std::invalid_argument("oracle sweep limited to " + std::to_string(max_attributes)
                                    + " attributes, context has "
                                    + std::to_string(ctx.attribute_count()));
    if (ctx.object_count() > max_objects)
        throw std::invalid_argument("oracle sweep limited to " + std::to_string(max_objects)
                                    + " objects, context has "
                                    + std::to_string(ctx.object_count()));
}

std::uint64_t full_object_mask(const FormalContext& ctx) {
    const std::size_t n = ctx.object_count();
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Per-attribute object masks read straight off the incidence relation.
std::vector<std::uint64_t> column_masks(const FormalContext& ctx) {
    std::vector<std::uint64_t> cols(ctx.attribute_count(), 0);
    for (std::uint32_t m = 0; m < ctx.attribute_count(); ++m)
        for (std::uint32_t g = 0; g < ctx.object_count(); ++g)
            if (ctx.incidence(g, m)) cols[m] |= std::uint64_t{1} << g;
    return cols;
}

std::uint64_t extent_of_mask(std::uint32_t items, const std::vector<std::uint64_t>& cols,
                             std::uint64_t everyone) {
    std::uint64_t ext = everyone;
    while (items) {
        ext &= cols[std::countr_zero(items)];
        items &= items - 1;
    }
    return ext;
}

std::uint32_t closure_of_extent(std::uint64_t ext, const std::vector<std::uint64_t>& cols) {
    std::uint32_t closed = 0;
    for (std::uint32_t m = 0; m < cols.size(); ++m)
        if ((ext & ~cols[m]) == 0) closed |= std::uint32_t{1} << m;
    return closed;
}

ItemSet to_itemset(std::uint32_t mask, std::size_t universe) {
    ItemSet s(universe);
    while (mask) {
        s.set(static_cast<std::uint32_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return s;
}

ObjectSet to_objectset(std::uint64_t mask, std::size_t universe) {
    ObjectSet s(universe);
    while (mask) {
        s.set(static_cast<std::uint32_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return s;
}

std::uint32_t to_mask(const ItemSet& s) {
    std::uint32_t mask = 0;
    s.for_each([&](std::uint32_t id) { mask |= std::uint32_t{1} << id; });
    return mask;
}

void sort_size_lex(std::vector<ItemSet>& sets) {
    std::sort(sets.begin(), sets.end(), [](const ItemSet& a, const ItemSet& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a.lex_less(b);
    });
}

std::uint64_t target_extent_checked(const FormalContext& ctx, const ItemSet& closed,
                                    const std::vector<std::uint64_t>& cols) {
    if (closed.universe() != ctx.attribute_count())
        throw std::invalid_argument("itemset universe does not match the context");
    const std::uint64_t ext = extent_of_mask(to_mask(closed), cols, full_object_mask(ctx));
    if (closure_of_extent(ext, cols) != to_mask(closed))
        throw std::invalid_argument("itemset is not closed in this context");
    return ext;
}

}  // namespace

GroundTruth ground_truth(const FormalContext& ctx) {
    check_limits(ctx);
    const auto cols = column_masks(ctx);
    const std::uint64_t everyone = full_object_mask(ctx);
    const std::size_t m = ctx.attribute_count();

    // Subsets visited by ascending size, so the first subset reaching an
    // extent has minimum size among its generators: that size is the level.
    std::vector<std::vector<std::uint32_t>> by_size(m + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask)
        by_size[std::popcount(mask)].push_back(static_cast<std::uint32_t>(mask));

    GroundTruth gt;
    std::unordered_map<std::uint64_t, unsigned> seen_extents;
    for (unsigned k = 0; k <= m; ++k) {
        std::vector<ItemSet> level;
        for (std::uint32_t mask : by_size[k]) {
            const std::uint64_t ext = extent_of_mask(mask, cols, everyone);
            if (!seen_extents.emplace(ext, k).second) continue;
            level.push_back(to_itemset(closure_of_extent(ext, cols), m));
        }
        sort_size_lex(level);
        for (const auto& c : level) gt.level_of.emplace(c, k);
        gt.levels.push_back(std::move(level));
    }
    // no early exit above: emptiness of intermediate levels is something
    // callers may legitimately ask about, so only trailing ones are dropped
    while (!gt.levels.empty() && gt.levels.back().empty()) gt.levels.pop_back();
    return gt;
}

std::vector<ItemSet> all_closed(const FormalContext& ctx) {
    auto gt = ground_truth(ctx);
    std::vector<ItemSet> out;
    for (auto& level : gt.levels)
        for (auto& c : level) out.push_back(std::move(c));
    sort_size_lex(out);
    return out;
}

EquivalenceClass equiv_class(const FormalContext& ctx, const ItemSet& closed) {
    check_limits(ctx);
    const auto cols = column_masks(ctx);
    const std::uint64_t everyone = full_object_mask(ctx);
    const std::uint64_t target = target_extent_checked(ctx, closed, cols);
    const std::uint32_t cm = to_mask(closed);

    EquivalenceClass out;
    out.closed = closed;
    out.ext = to_objectset(target, ctx.object_count());

    // Members live inside the closed set, so scanning its submasks suffices.
    std::uint32_t s = cm;
    for (;;) {
        if (extent_of_mask(s, cols, everyone) == target) {
            out.members.push_back(to_itemset(s, ctx.attribute_count()));
            bool minimal = true;
            std::uint32_t rest = s;
            while (rest) {
                const std::uint32_t bit = rest & (~rest + 1);
                if (extent_of_mask(s ^ bit, cols, everyone) == target) {
                    minimal = false;
                    break;
                }
                rest ^= bit;
            }
            if (minimal) out.keys.push_back(out.members.back());
        }
        if (s == 0) break;
        s = (s - 1) & cm;
    }

    sort_size_lex(out.members);
    sort_size_lex(out.keys);
    std::size_t best = ctx.attribute_count() + 1;
    for (const auto& k : out.keys) best = std::min(best, k.count());
    for (const auto& k : out.keys)
        if (k.count() == best) out.passkeys.push_back(k);
    return out;
}

unsigned passkey_size(const FormalContext& ctx, const ItemSet& closed) {
    check_limits(ctx);
    const auto cols = column_masks(ctx);
    const std::uint64_t everyone = full_object_mask(ctx);
    const std::uint64_t target = target_extent_checked(ctx, closed, cols);
    const auto items = closed.ids();
    const std::size_t n = items.size();

    for (unsigned k = 0; k <= n; ++k) {
        // k-combinations of the closed set's items, smallest id first
        std::vector<std::uint32_t> pick(k);
        for (unsigned i = 0; i < k; ++i) pick[i] = i;
        for (;;) {
            std::uint64_t ext = everyone;
            for (auto idx : pick) ext &= cols[items[idx]];
            if (ext == target) return k;
            // advance to the next combination
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && pick[i] == n - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (unsigned j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw std::logic_error("closed itemset without a generator of its own size");
}

ItemSet lex_smallest_passkey(const FormalContext& ctx, const ItemSet& closed) {
    const unsigned k = passkey_size(ctx, closed);
    const auto cols = column_masks(ctx);
    const std::uint64_t everyone = full_object_mask(ctx);
    const std::uint64_t target = extent_of_mask(to_mask(closed), cols, everyone);
    const auto items = closed.ids();
    const std::size_t n = items.size();

    // Combinations of fixed size enumerate in lexicographic order, so the
    // first generator found is the lexicographically smallest passkey.
    std::vector<std::uint32_t> pick(k);
    for (unsigned i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
        std::uint64_t ext = everyone;
        for (auto idx : pick) ext &= cols[items[idx]];
        if (ext == target) {
            ItemSet out(ctx.attribute_count());
            for (auto idx : pick) out.set(items[idx]);
            return out;
        }
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (unsigned j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    throw std::logic_error("no passkey of the expected size");
}

namespace {

// Extents of every submask of the closed set, by dynamic programming over a
// compressed universe (bit i of a submask = i-th item of the closed set).
std::vector<std::uint64_t> submask_extents(const FormalContext& ctx, const ItemSet& closed,
                                           std::size_t limit) {
    if (ctx.object_count() > max_objects)
        throw std::invalid_argument("oracle sweep limited to " + std::to_string(max_objects)
                                    + " objects");
    const auto items = closed.ids();
    if (items.size() > limit)
        throw std::invalid_argument("key scan limited to " + std::to_string(limit)
                                    + " items in the closed set");
    std::vector<std::uint64_t> col(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::uint32_t g = 0; g < ctx.object_count(); ++g)
            if (ctx.incidence(g, items[i])) col[i] |= std::uint64_t{1} << g;

    std::vector<std::uint64_t> ext(std::size_t{1} << items.size());
    ext[0] = full_object_mask(ctx);
    for (std::size_t s = 1; s < ext.size(); ++s)
        ext[s] = ext[s & (s - 1)] & col[std::countr_zero(s)];
    return ext;
}

}  // namespace

KeyCount count_keys(const FormalContext& ctx, const ItemSet& closed) {
    const auto ext = submask_extents(ctx, closed, 22);
    const std::uint64_t target = ext.back();
    const std::size_t t = closed.count();

    KeyCount out;
    std::size_t best = t + 1;
    for (std::size_t s = 0; s < ext.size(); ++s) {
        if (ext[s] != target) continue;
        bool minimal = true;
        std::size_t rest = s;
        while (rest) {
            const std::size_t bit = rest & (~rest + 1);
            if (ext[s ^ bit] == target) {
                minimal = false;
                break;
            }
            rest ^= bit;
        }
        if (!minimal) continue;
        ++out.keys;
        const auto size = static_cast<std::size_t>(std::popcount(s));
        if (size < best) {
            best = size;
            out.passkeys = 1;
        } else if (size == best) {
            ++out.passkeys;
        }
    }
    return out;
}

std::vector<ItemSet> keys_of(const FormalContext& ctx, const ItemSet& closed) {
    const auto ext = submask_extents(ctx, closed, max_attributes);
    const std::uint64_t target = ext.back();
    const auto items = closed.ids();

    std::vector<ItemSet> keys;
    for (std::size_t s = 0; s < ext.size(); ++s) {
        if (ext[s] != target) continue;
        bool minimal = true;
        std::size_t rest = s;
        while (rest) {
            const std::size_t bit = rest & (~rest + 1);
            if (ext[s ^ bit] == target) {
                minimal = false;
                break;
            }
            rest ^= bit;
        }
        if (!minimal) continue;
        ItemSet key(ctx.attribute_count());
        std::size_t m = s;
        while (m) {
            key.set(items[std::countr_zero(m)]);
            m &= m - 1;
        }
        keys.push_back(std::move(key));
    }
    sort_size_lex(keys);
    return keys;
}

}  // namespace gdpm::oracle
