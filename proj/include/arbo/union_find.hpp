#pragma once

#include <numeric>
#include <vector>

#include "arbo/instrument.hpp"
#include "arbo/types.hpp"

namespace arbo {

// Union by size with path compression. Each set carries a designated
// representative node ("top") chosen by the caller at union time.
class union_find {
public:
    explicit union_find(std::size_t n) : parent_(n), size_(n, 1), top_(n)
    {
        std::iota(parent_.begin(), parent_.end(), 0);
        std::iota(top_.begin(), top_.end(), 0);
    }

    std::int32_t find(std::int32_t x)
    {
        charge(1);
        std::int32_t r = x;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[x] != r) {
            std::int32_t nx = parent_[x];
            parent_[x] = r;
            x = nx;
        }
        return r;
    }

    // Merge the set of `child` into the set of `keeper`; the merged set keeps
    // the top of keeper's set.
    void unite_into(std::int32_t child, std::int32_t keeper)
    {
        std::int32_t a = find(child), b = find(keeper);
        if (a == b) return;
        std::int32_t t = top_[b];
        if (size_[a] > size_[b]) std::swap(a, b);
        parent_[a] = b;
        size_[b] += size_[a];
        top_[b] = t;
    }

    std::int32_t top(std::int32_t x) { return top_[find(x)]; }

private:
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> size_;
    std::vector<std::int32_t> top_;
};

} // namespace arbo
