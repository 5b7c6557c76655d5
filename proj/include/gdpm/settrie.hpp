#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gdpm {

/// Prefix tree over strictly ascending id sequences. Each stored set is the
/// path from the root to a node carrying the member flag, so sets sharing a
/// prefix share nodes. Built for one purpose: answering "seen before?"
/// during level-wise mining, where candidates arrive as sorted sequences.
///
/// Lookups are safe from several readers at once; insert requires exclusive
/// access (single writer, no concurrent readers).
class SetTrie {
public:
    SetTrie() { nodes_.push_back(Node{}); }

    /// Adds a set given as a strictly ascending id sequence. Returns true if
    /// the set was new, false (and changes nothing) if already present.
    /// A non-ascending sequence is rejected with std::invalid_argument.
    bool insert(std::span<const std::uint32_t> ids);

    /// Exact membership: prefixes of stored sets do not count.
    bool contains(std::span<const std::uint32_t> ids) const;

    /// Nodes allocated below the root.
    std::size_t node_count() const { return nodes_.size() - 1; }

    /// Stored sets.
    std::size_t member_count() const { return members_; }

private:
    struct Node {
        bool member = false;
        // child edges sorted by label; value is an index into nodes_
        std::vector<std::pair<std::uint32_t, std::uint32_t>> children;
    };

    static void check_ascending(std::span<const std::uint32_t> ids);
    const Node* walk(std::span<const std::uint32_t> ids) const;

    std::vector<Node> nodes_;
    std::size_t members_ = 0;
};

}  // namespace gdpm
