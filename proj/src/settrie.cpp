#include "gdpm/settrie.hpp"

#include <algorithm>
#include <stdexcept>

namespace gdpm {

void SetTrie::check_ascending(std::span<const std::uint32_t> ids) {
    for (std::size_t i = 1; i < ids.size(); ++i)
        if (ids[i - 1] >= ids[i])
            throw std::invalid_argument("set-trie requires strictly ascending id sequences");
}

bool SetTrie::insert(std::span<const std::uint32_t> ids) {
    check_ascending(ids);
    std::uint32_t at = 0;
    for (auto id : ids) {
        auto& children = nodes_[at].children;
        auto it = std::lower_bound(children.begin(), children.end(), id,
                                   [](const auto& edge, std::uint32_t v) { return edge.first < v; });
        if (it != children.end() && it->first == id) {
            at = it->second;
        } else {
            const auto fresh = static_cast<std::uint32_t>(nodes_.size());
            nodes_[at].children.insert(it, {id, fresh});
            nodes_.push_back(Node{});
            at = fresh;
        }
    }
    if (nodes_[at].member) return false;
    nodes_[at].member = true;
    ++members_;
    return true;
}

const SetTrie::Node* SetTrie::walk(std::span<const std::uint32_t> ids) const {
    std::uint32_t at = 0;
    for (auto id : ids) {
        const auto& children = nodes_[at].children;
        auto it = std::lower_bound(children.begin(), children.end(), id,
                                   [](const auto& edge, std::uint32_t v) { return edge.first < v; });
        if (it == children.end() || it->first != id) return nullptr;
        at = it->second;
    }
    return &nodes_[at];
}

bool SetTrie::contains(std::span<const std::uint32_t> ids) const {
    check_ascending(ids);
    const Node* n = walk(ids);
    return n != nullptr && n->member;
}

}  // namespace gdpm
