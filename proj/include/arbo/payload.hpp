#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arbo/types.hpp"

namespace arbo {

// Tree of original edge ids behind a merged edge.
struct merged_edge {
    std::int32_t child_begin = 0;
    std::int32_t child_count = 0;
    std::int64_t size = 0;  // number of leaf descendants
    int merge_depth = 0;
};

// Leaves are the ids 1..m. Merged edges get ids above m and are released in
// LIFO order, mirroring the graph journal.
class payload_arena {
public:
    explicit payload_arena(payload_id leaf_count) : leaf_count_(leaf_count) {}

    payload_id leaf_count() const { return leaf_count_; }
    bool is_leaf(payload_id p) const { return p >= 1 && p <= leaf_count_; }
    payload_id bound() const { return leaf_count_ + static_cast<payload_id>(merged_.size()); }
    std::size_t merged_count() const { return merged_.size(); }

    payload_id add_merged(std::span<const payload_id> children, int depth)
    {
        require(children.size() >= 2, "merged edge needs at least two children");
        merged_edge me;
        me.child_begin = static_cast<std::int32_t>(pool_.size());
        me.child_count = static_cast<std::int32_t>(children.size());
        me.merge_depth = depth;
        for (payload_id c : children) {
            pool_.push_back(c);
            me.size += size(c);
        }
        merged_.push_back(me);
        return bound();
    }

    void pop_merged(payload_id p)
    {
        require(p == bound() && !merged_.empty(), "merged edges released out of order");
        pool_.resize(merged_.back().child_begin);
        merged_.pop_back();
    }

    const merged_edge& merged(payload_id p) const { return merged_[p - leaf_count_ - 1]; }

    std::int64_t size(payload_id p) const { return is_leaf(p) ? 1 : merged(p).size; }

    std::span<const payload_id> children(payload_id p) const
    {
        const merged_edge& me = merged(p);
        return {pool_.data() + me.child_begin, static_cast<std::size_t>(me.child_count)};
    }

    template <class F>
    void for_each_leaf(payload_id p, F&& f) const
    {
        if (is_leaf(p)) {
            f(p);
            return;
        }
        for (payload_id c : children(p)) for_each_leaf(c, f);
    }

    std::vector<payload_id> leaves(payload_id p) const
    {
        std::vector<payload_id> out;
        for_each_leaf(p, [&](payload_id l) { out.push_back(l); });
        return out;
    }

    std::size_t footprint() const { return merged_.size() + pool_.size(); }

private:
    payload_id leaf_count_;
    std::vector<merged_edge> merged_;
    std::vector<payload_id> pool_;
};

} // namespace arbo
