#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdpm {

/// Fixed-universe set of ids 0..universe-1, stored as 64-bit words.
///
/// The Tag parameter makes attribute sets and object sets distinct types so
/// they cannot be mixed by accident; both behave identically. Ids enumerate
/// in ascending order, which is also the lexicographic order used throughout:
/// a set precedes another if the smallest differing id belongs to it.
template <typename Tag>
class IdSet {
public:
    IdSet() = default;

    explicit IdSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static IdSet full(std::size_t universe) {
        IdSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    static IdSet of(std::size_t universe, std::initializer_list<std::uint32_t> ids) {
        IdSet s(universe);
        for (auto id : ids) s.set(id);
        return s;
    }

    static IdSet of(std::size_t universe, const std::vector<std::uint32_t>& ids) {
        IdSet s(universe);
        for (auto id : ids) s.set(id);
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool test(std::uint32_t id) const {
        return id < universe_ && (words_[id / 64] >> (id % 64)) & 1u;
    }

    void set(std::uint32_t id) {
        if (id >= universe_)
            throw std::out_of_range("id " + std::to_string(id) + " outside universe of size "
                                    + std::to_string(universe_));
        words_[id / 64] |= std::uint64_t{1} << (id % 64);
    }

    void reset(std::uint32_t id) {
        if (id >= universe_)
            throw std::out_of_range("id " + std::to_string(id) + " outside universe of size "
                                    + std::to_string(universe_));
        words_[id / 64] &= ~(std::uint64_t{1} << (id % 64));
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    void intersect_with(const IdSet& other) {
        check_same_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    }

    void unite_with(const IdSet& other) {
        check_same_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    }

    void subtract(const IdSet& other) {
        check_same_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    }

    bool is_subset_of(const IdSet& other) const {
        check_same_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool intersects(const IdSet& other) const {
        check_same_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    friend IdSet operator&(IdSet a, const IdSet& b) {
        a.intersect_with(b);
        return a;
    }

    friend IdSet operator|(IdSet a, const IdSet& b) {
        a.unite_with(b);
        return a;
    }

    bool operator==(const IdSet& other) const = default;

    /// Dictionary order on the ascending id sequences: the owner of the
    /// smallest differing id comes first ({a,b,f} < {a,c}), except that a
    /// proper prefix precedes its extensions ({a} < {a,b}).
    bool lex_less(const IdSet& other) const {
        check_same_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const std::uint64_t diff = words_[i] ^ other.words_[i];
            if (!diff) continue;
            const int bit = std::countr_zero(diff);
            const bool mine = (words_[i] >> bit) & 1u;
            // The non-owner is smaller iff it ends before the differing id.
            const IdSet& rest = mine ? other : *this;
            bool more = (rest.words_[i] & ((~std::uint64_t{0} << bit) << 1)) != 0;
            for (std::size_t j = i + 1; !more && j < words_.size(); ++j)
                more = rest.words_[j] != 0;
            return mine == more;
        }
        return false;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> ids() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::uint32_t id) { out.push_back(id); });
        return out;
    }

    // Refills `out` in ascending order; reuses its capacity.
    void copy_ids_into(std::vector<std::uint32_t>& out) const {
        out.clear();
        for_each([&](std::uint32_t id) { out.push_back(id); });
    }

    std::size_t hash() const {
        std::size_t h = universe_ * 0x9e3779b97f4a7c15ull;
        for (auto w : words_) h = (h ^ w) * 0x100000001b3ull;
        return h;
    }

private:
    void check_same_universe(const IdSet& other) const {
        if (universe_ != other.universe_)
            throw std::invalid_argument("id sets over different universes ("
                                        + std::to_string(universe_) + " vs "
                                        + std::to_string(other.universe_) + ")");
    }

    void trim() {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct item_tag {};
struct object_tag {};

/// Set of attribute ids (an itemset).
using ItemSet = IdSet<item_tag>;
/// Set of object ids (an extent).
using ObjectSet = IdSet<object_tag>;

template <typename Tag>
struct IdSetHash {
    std::size_t operator()(const IdSet<Tag>& s) const { return s.hash(); }
};

}  // namespace gdpm
