#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arbo/io.hpp"

namespace arbo::gen {

// Portable draws: libstdc++ and libc++ distributions differ, raw engine
// output does not.
class rng {
public:
    explicit rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t k) { return eng_() % k; }
    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
};

inline edge_list complete(node_id n)
{
    edge_list g{n, 1, {}};
    for (node_id u = 1; u <= n; ++u)
        for (node_id v = 1; v <= n; ++v)
            if (u != v) g.edges.emplace_back(u, v);
    return g;
}

// Bidirected cycle 1..n.
inline edge_list bicycle(node_id n)
{
    edge_list g{n, 1, {}};
    if (n == 2) {
        g.edges = {{1, 2}, {2, 1}};
        return g;
    }
    for (node_id i = 1; i <= n; ++i) {
        node_id j = i % n + 1;
        g.edges.emplace_back(i, j);
        g.edges.emplace_back(j, i);
    }
    return g;
}

// k bidirected cycles in series; consecutive cycles share one node. Cycle
// lengths differ by at most one. Arborescence count is the product of the
// cycle lengths.
inline edge_list bipath_cycles(node_id n, int k = 2)
{
    if (k < 1 || n < 2 * k + 1) throw std::invalid_argument("bipath-cycles needs n >= 2k+1");
    edge_list g{n, 1, {}};
    node_id start = 1;
    node_id span = n - 1;  // total path length over all cycles
    for (int j = 0; j < k; ++j) {
        node_id len = span / k + (j < span % k ? 1 : 0);
        node_id end = start + len;
        for (node_id v = start; v < end; ++v) {
            g.edges.emplace_back(v, v + 1);
            g.edges.emplace_back(v + 1, v);
        }
        g.edges.emplace_back(start, end);
        g.edges.emplace_back(end, start);
        start = end;
    }
    return g;
}

// Random multigraph with a random spanning arborescence from the root, so
// every node is reachable when m >= n-1. Edge order is shuffled.
inline edge_list random_graph(node_id n, std::int64_t m, std::uint64_t seed, bool allow_parallel = true)
{
    rng r(seed);
    edge_list g{n, 1, {}};
    std::vector<node_id> order;
    for (node_id v = 2; v <= n; ++v) order.push_back(v);
    r.shuffle(order);
    order.insert(order.begin(), 1);
    std::vector<std::pair<node_id, node_id>> es;
    for (std::size_t i = 1; i < order.size() && static_cast<std::int64_t>(es.size()) < m; ++i)
        es.emplace_back(order[r.below(i)], order[i]);
    std::int64_t max_simple = static_cast<std::int64_t>(n) * (n - 1);
    if (!allow_parallel) m = std::min(m, max_simple);
    while (static_cast<std::int64_t>(es.size()) < m && n > 1) {
        node_id u = static_cast<node_id>(r.below(n)) + 1;
        node_id v = static_cast<node_id>(r.below(n)) + 1;
        if (u == v) continue;
        if (!allow_parallel && std::find(es.begin(), es.end(), std::make_pair(u, v)) != es.end()) continue;
        es.emplace_back(u, v);
    }
    r.shuffle(es);
    g.edges = std::move(es);
    return g;
}

// Bidirected cycle plus d extra edges into node h = n/2 + 1 from the nodes
// 2..d+1 that are not its cycle neighbours.
inline edge_list fatnode(node_id n, int d)
{
    edge_list g = bicycle(n);
    node_id h = n / 2 + 1;
    int added = 0;
    for (node_id u = 2; u <= n && added < d; ++u) {
        if (u == h || u == h - 1 || u == h + 1) continue;
        g.edges.emplace_back(u, h);
        ++added;
    }
    if (added < d) throw std::invalid_argument("fatnode: n too small for d");
    return g;
}

// k parallel edges from the root to one node.
inline edge_list parallel(int k)
{
    edge_list g{2, 1, {}};
    for (int i = 0; i < k; ++i) g.edges.emplace_back(1, 2);
    return g;
}

} // namespace arbo::gen
