#pragma once

#include <map>
#include <set>
#include <vector>

#include "arbo/generators.hpp"
#include "arbo/graph.hpp"
#include "arbo/oracle.hpp"
#include "arbo/trim_flatten.hpp"

namespace arbo::testing {

inline rooted_digraph make(node_id n, node_id root, std::vector<std::pair<node_id, node_id>> edges)
{
    return edge_list{n, root, std::move(edges)}.build();
}

// Simple digraph on n nodes whose edge set is the bit mask over the ordered
// pairs (u, v), u != v, in row-major order.
inline edge_list from_mask(node_id n, std::uint64_t mask)
{
    edge_list g{n, 1, {}};
    int bit = 0;
    for (node_id u = 1; u <= n; ++u)
        for (node_id v = 1; v <= n; ++v) {
            if (u == v) continue;
            if (mask >> bit & 1) g.edges.emplace_back(u, v);
            ++bit;
        }
    return g;
}

inline bool all_reachable(const rooted_digraph& g)
{
    std::vector<std::uint8_t> seen(g.node_count() + 1, 0);
    std::vector<node_id> st{g.root()};
    seen[g.root()] = 1;
    std::int64_t cnt = 1;
    while (!st.empty()) {
        node_id u = st.back();
        st.pop_back();
        g.for_each_out(u, [&](edge_id e) {
            if (!seen[g.head(e)]) {
                seen[g.head(e)] = 1;
                ++cnt;
                st.push_back(g.head(e));
            }
        });
    }
    return cnt == g.live_node_count();
}

// Membership counts of each leaf id over all arborescences.
inline std::map<edge_id, std::size_t> membership(const canonical_arb_set& arbs)
{
    std::map<edge_id, std::size_t> m;
    for (const auto& a : arbs)
        for (edge_id e : a) ++m[e];
    return m;
}

// Fresh copy of a (possibly mutated) graph with the same payloads, nodes
// renumbered densely in id order.
inline rooted_digraph compact_copy(const rooted_digraph& g)
{
    std::vector<node_id> map(g.node_count() + 1, no_node);
    node_id k = 0;
    for (node_id v = 1; v <= g.node_count(); ++v)
        if (g.is_live(v)) map[v] = ++k;
    rooted_digraph h(k, map[g.root()]);
    g.for_each_edge([&](edge_id e) { h.add_edge(map[g.tail(e)], map[g.head(e)], g.payload(e)); });
    return h;
}

// Canonical edge multiset (tail, head, payload) of a graph.
inline std::multiset<std::tuple<node_id, node_id, payload_id>> edge_multiset(const rooted_digraph& g)
{
    std::multiset<std::tuple<node_id, node_id, payload_id>> s;
    g.for_each_edge([&](edge_id e) { s.emplace(g.tail(e), g.head(e), g.payload(e)); });
    return s;
}

// Trimmed, flattened fresh copy of el; merged payloads live in arena.
// Returns a single-node graph when everything is forced.
inline rooted_digraph trimmed_flat(const edge_list& el, payload_arena& arena)
{
    rooted_digraph g = el.build();
    trim(g);
    flatten(g, arena);
    return compact_copy(g);
}

} // namespace arbo::testing
