#pragma once

#include <cstdint>
#include <vector>

#include "arbo/instrument.hpp"

namespace arbo {

// Stable counting sort of item indices by key in [0, bound].
inline std::vector<std::int32_t> counting_sort(const std::vector<std::int32_t>& items,
                                               const std::vector<std::int32_t>& key, std::int32_t bound)
{
    std::vector<std::int32_t> count(static_cast<std::size_t>(bound) + 2, 0);
    for (std::int32_t it : items) ++count[key[it] + 1];
    for (std::size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
    std::vector<std::int32_t> out(items.size());
    for (std::int32_t it : items) out[count[key[it]]++] = it;
    charge(2 * items.size() + count.size());
    return out;
}

// Indices 0..s-1 sorted lexicographically by (major[i], minor[i]), both keys
// in [0, bound]. Two stable passes, least significant key first.
inline std::vector<std::int32_t> sort_pairs(const std::vector<std::int32_t>& major,
                                            const std::vector<std::int32_t>& minor, std::int32_t bound)
{
    std::vector<std::int32_t> idx(major.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int32_t>(i);
    return counting_sort(counting_sort(idx, minor, bound), major, bound);
}

} // namespace arbo
