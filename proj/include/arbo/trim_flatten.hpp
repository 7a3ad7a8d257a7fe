#pragma once

#include <vector>

#include "arbo/dominators.hpp"
#include "arbo/graph.hpp"
#include "arbo/payload.hpp"
#include "arbo/radix_sort.hpp"

namespace arbo {

enum class edge_class : std::uint8_t { useless, forced, nontrivial };

struct edge_classification {
    std::vector<edge_id> useless;
    std::vector<edge_id> forced;
    std::vector<edge_id> nontrivial;
};

// (u, v) is useless iff v dominates u. Among the rest, an edge is forced iff
// it is the only one entering its head.
inline edge_classification classify_edges(const rooted_digraph& g)
{
    dominator_tree dom = build_dominator_tree(g);
    edge_classification out;
    const node_id n = g.node_count();
    std::vector<int> useful_in(n + 1, 0);
    std::uint64_t scanned = 0;
    for (node_id v = 1; v <= n; ++v) {
        if (!g.is_live(v)) continue;
        for (edge_id e = g.in_first(v); e; e = g.in_next(e)) {
            ++scanned;
            if (!dom.is_ancestor(v, g.tail(e))) ++useful_in[v];
        }
    }
    for (node_id v = 1; v <= n; ++v) {
        if (!g.is_live(v)) continue;
        for (edge_id e = g.in_first(v); e; e = g.in_next(e)) {
            if (dom.is_ancestor(v, g.tail(e)))
                out.useless.push_back(e);
            else if (useful_in[v] == 1)
                out.forced.push_back(e);
            else
                out.nontrivial.push_back(e);
        }
    }
    charge(2 * scanned + n);
    return out;
}

inline std::vector<edge_class> classify_by_slot(const rooted_digraph& g)
{
    edge_classification c = classify_edges(g);
    std::vector<edge_class> by_slot(g.slot_bound() + 1, edge_class::useless);
    for (edge_id e : c.forced) by_slot[e] = edge_class::forced;
    for (edge_id e : c.nontrivial) by_slot[e] = edge_class::nontrivial;
    return by_slot;
}

struct trim_result {
    journal_mark mark;
    std::vector<payload_id> forced;  // payloads of the contracted forced edges
};

// In-place trim: remove useless edges, contract forced edges top-down,
// renumber the surviving nodes to 1..n'. Undo with g.rollback(result.mark).
inline trim_result trim(rooted_digraph& g)
{
    trim_result res;
    res.mark = g.mark();
    edge_classification c = classify_edges(g);
    for (edge_id e : c.useless) g.unlink(e);
    if (!c.forced.empty()) {
        const node_id n = g.node_count();
        std::vector<edge_id> forced_in(n + 1, no_edge);
        for (edge_id e : c.forced) forced_in[g.head(e)] = e;
        // A node entered only by a forced edge is discovered from that
        // edge's tail, so discovery order is a top-down order of the forced
        // forest.
        std::vector<std::uint8_t> seen(n + 1, 0);
        std::vector<node_id> stack{g.root()};
        std::vector<edge_id> order;
        order.reserve(c.forced.size());
        seen[g.root()] = 1;
        std::uint64_t scanned = 0;
        while (!stack.empty()) {
            node_id u = stack.back();
            stack.pop_back();
            for (edge_id e = g.out_first(u); e; e = g.out_next(e)) {
                ++scanned;
                node_id w = g.head(e);
                if (seen[w]) continue;
                seen[w] = 1;
                if (forced_in[w] != no_edge) order.push_back(forced_in[w]);
                stack.push_back(w);
            }
        }
        charge(scanned + n);
        for (edge_id e : order) {
            res.forced.push_back(g.payload(e));
            g.contract(e);
        }
    }
    std::vector<node_id> kept;
    for (node_id v = 1; v <= g.node_count(); ++v)
        if (g.is_live(v)) kept.push_back(v);
    if (static_cast<node_id>(kept.size()) != g.node_count()) g.relabel(kept);
    return res;
}

struct flatten_result {
    journal_mark mark;
    std::size_t merged = 0;
};

// Merge edges 2..k of every parallel group of size k >= 3 into one edge, so
// at most two edges remain per ordered pair.
inline flatten_result flatten(rooted_digraph& g, payload_arena& arena, int depth = 0)
{
    flatten_result res;
    res.mark = g.mark();
    std::vector<edge_id> es = g.edges_in_order();
    std::vector<std::int32_t> tails(es.size()), heads(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) {
        tails[i] = g.tail(es[i]);
        heads[i] = g.head(es[i]);
    }
    std::vector<std::int32_t> order = sort_pairs(tails, heads, g.node_count());
    std::vector<edge_id> group;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && tails[order[j]] == tails[order[i]] && heads[order[j]] == heads[order[i]]) ++j;
        if (j - i >= 3) {
            group.clear();
            for (std::size_t k = i + 1; k < j; ++k) group.push_back(es[order[k]]);
            g.merge(group, arena, depth);
            ++res.merged;
        }
        i = j;
    }
    return res;
}

} // namespace arbo
