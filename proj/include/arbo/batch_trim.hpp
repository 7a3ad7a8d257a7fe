#pragma once

#include <vector>

#include "arbo/disjoint_pair.hpp"
#include "arbo/graph.hpp"
#include "arbo/instrument.hpp"
#include "arbo/radix_sort.hpp"
#include "arbo/union_find.hpp"

namespace arbo {

// Trim(G_i) as a fresh graph: node 1 is r, the others are the heads of
// NT(G_i) ordered by preorder in B.
struct trimmed_instance {
    rooted_digraph graph;
    std::vector<node_id> node_map;     // new id -> node of G
    std::vector<edge_id> edge_origin;  // new slot -> slot of G
};

// The batch is i = b .. b + nt.size() - 1 with nt[k] = NT(G_{b+k}) as G
// slots. Answers are per k, aligned with nt[k].
using batch_answers = std::vector<std::vector<node_id>>;

namespace detail {

struct batch_items {
    std::vector<std::int32_t> k;     // instance offset
    std::vector<std::int32_t> key;   // 2 * preB + (query ? 1 : 0)
    std::vector<node_id> node;
    std::vector<std::int32_t> ref;   // query: position in nt[k]; -1 for D items
    std::vector<std::int32_t> order; // sorted by (k, key)
    std::vector<std::int32_t> begin; // first sorted position of each k, plus end
};

// D_i = {r} + heads, Q_i = tails, radix sorted by (i, preB) in one pass over
// the whole batch.
inline batch_items sort_batch(const rooted_digraph& g, const arborescence_pair& p,
                              const std::vector<std::vector<edge_id>>& nt)
{
    batch_items it;
    auto push = [&](std::int32_t k, node_id v, bool query, std::int32_t ref) {
        it.k.push_back(k);
        it.key.push_back(2 * p.b.pre[v] + (query ? 1 : 0));
        it.node.push_back(v);
        it.ref.push_back(ref);
    };
    for (std::size_t k = 0; k < nt.size(); ++k) {
        auto kk = static_cast<std::int32_t>(k);
        push(kk, g.root(), false, -1);
        for (std::size_t j = 0; j < nt[k].size(); ++j) {
            push(kk, g.head(nt[k][j]), false, -1);
            push(kk, g.tail(nt[k][j]), true, static_cast<std::int32_t>(j));
        }
    }
    std::int32_t bound = std::max<std::int32_t>(static_cast<std::int32_t>(nt.size()), 2 * g.node_count() + 2);
    it.order = sort_pairs(it.k, it.key, bound);
    it.begin.assign(nt.size() + 1, 0);
    for (std::int32_t x : it.k) ++it.begin[x + 1];
    for (std::size_t k = 1; k < it.begin.size(); ++k) it.begin[k] += it.begin[k - 1];
    return it;
}

// Decreasing-preorder sweep with a stack of pending queries; a query node
// equal to a D node is seen first and answered by it.
inline batch_answers sweep_nearest(const arborescence_pair& p, const std::vector<std::vector<edge_id>>& nt,
                                   const batch_items& it)
{
    batch_answers ans(nt.size());
    std::vector<std::int32_t> stack;
    for (std::size_t k = 0; k < nt.size(); ++k) {
        ans[k].assign(nt[k].size(), no_node);
        stack.clear();
        for (std::int32_t pos = it.begin[k + 1] - 1; pos >= it.begin[k]; --pos) {
            std::int32_t x = it.order[pos];
            if (it.ref[x] >= 0) {
                stack.push_back(x);
                continue;
            }
            node_id v = it.node[x];
            while (!stack.empty() && p.b.is_ancestor(v, it.node[stack.back()])) {
                ans[k][it.ref[stack.back()]] = v;
                stack.pop_back();
            }
        }
        require(stack.empty(), "batch trim: query without an ancestor in D");
    }
    charge(it.order.size());
    return ans;
}

} // namespace detail

// For every f in NT(G_i), the nearest B-ancestor of t(f) in D_i.
inline batch_answers nearest_trimmed_ancestors(const rooted_digraph& g, const arborescence_pair& p,
                                               const std::vector<std::vector<edge_id>>& nt)
{
    return detail::sweep_nearest(p, nt, detail::sort_batch(g, p, nt));
}

// For every f in NT(G_i), the nearest B-ancestor of t(f) in M(i) = {r} plus
// the heads of a_1..a_{i-1}. Offline sweep from i = e down to b; after
// answering i, h(a_{i-1}) leaves M and joins its B-parent's set.
inline batch_answers contracted_prefix_ancestors(const rooted_digraph& g, const arborescence_pair& p, int b,
                                                 const std::vector<std::vector<edge_id>>& nt)
{
    const node_id n = g.node_count();
    const int e = b + static_cast<int>(nt.size()) - 1;
    union_find uf(static_cast<std::size_t>(n) + 1);
    for (int x = e; x < n; ++x) {
        node_id v = p.a.order[x];
        uf.unite_into(v, p.b.parent[v]);
    }
    batch_answers ans(nt.size());
    for (int i = e; i >= b; --i) {
        const auto& list = nt[i - b];
        auto& out = ans[i - b];
        out.reserve(list.size());
        for (edge_id f : list) out.push_back(static_cast<node_id>(uf.top(g.tail(f))));
        if (i - 1 >= 1) {
            node_id v = p.a.order[i - 1];
            uf.unite_into(v, p.b.parent[v]);
        }
    }
    charge(static_cast<std::uint64_t>(n));
    return ans;
}

// Trim(G_i) for every i of the batch in O(n + sum |NT(G_i)|).
inline std::vector<trimmed_instance> build_trims(const rooted_digraph& g, const arborescence_pair& p, int b,
                                                 const std::vector<std::vector<edge_id>>& nt)
{
    detail::batch_items it = detail::sort_batch(g, p, nt);
    batch_answers near = detail::sweep_nearest(p, nt, it);
    batch_answers prefix = contracted_prefix_ancestors(g, p, b, nt);
    std::vector<node_id> local(g.node_count() + 1, no_node);
    std::vector<trimmed_instance> out(nt.size());
    std::uint64_t touched = 0;
    for (std::size_t k = 0; k < nt.size(); ++k) {
        trimmed_instance& ti = out[k];
        ti.node_map.push_back(no_node);
        for (std::int32_t pos = it.begin[k]; pos < it.begin[k + 1]; ++pos) {
            std::int32_t x = it.order[pos];
            node_id v = it.node[x];
            if (it.ref[x] >= 0 || local[v] != no_node) continue;
            local[v] = static_cast<node_id>(ti.node_map.size());
            ti.node_map.push_back(v);
        }
        require(ti.node_map[1] == g.root(), "batch trim: root is not first in B preorder");
        ti.graph.reset(static_cast<node_id>(ti.node_map.size()) - 1, 1);
        ti.edge_origin.push_back(no_edge);
        for (std::size_t j = 0; j < nt[k].size(); ++j) {
            edge_id f = nt[k][j];
            node_id d = near[k][j], m = prefix[k][j];
            node_id tail = p.b.pre[d] > p.b.pre[m] ? d : g.root();
            require(local[tail] != local[g.head(f)], "batch trim: nontrivial edge became a loop");
            ti.graph.add_edge(local[tail], local[g.head(f)], g.payload(f));
            ti.edge_origin.push_back(f);
        }
        for (std::size_t v = 1; v < ti.node_map.size(); ++v) local[ti.node_map[v]] = no_node;
        touched += ti.node_map.size() + nt[k].size();
    }
    charge(touched);
    return out;
}

} // namespace arbo
