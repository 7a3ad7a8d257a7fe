#pragma once

#include <vector>

#include "arbo/graph.hpp"
#include "arbo/instrument.hpp"
#include "arbo/types.hpp"

namespace arbo {

// Rooted tree over node ids with preorder/postorder intervals.
struct tree_index {
    node_id root = no_node;
    std::vector<node_id> parent;  // no_node for the root and absent nodes
    std::vector<int> pre;         // 1-based; 0 for absent nodes
    std::vector<int> post;
    std::vector<int> subtree;     // subtree sizes
    std::vector<node_id> order;   // nodes by preorder, order[0] = root

    bool contains(node_id v) const { return pre[v] != 0; }
    // u = v counts as an ancestor.
    bool is_ancestor(node_id u, node_id v) const { return pre[u] <= pre[v] && post[v] <= post[u]; }
    int size() const { return static_cast<int>(order.size()); }
};

namespace detail {

// children given in CSR form: kids[first[u] .. first[u+1]).
inline void number_tree(tree_index& t, const std::vector<int>& first, const std::vector<node_id>& kids)
{
    std::size_t n = t.parent.size();
    t.pre.assign(n, 0);
    t.post.assign(n, 0);
    t.subtree.assign(n, 0);
    t.order.clear();
    std::vector<int> cursor(first.begin(), first.end() - 1);
    std::vector<node_id> stack{t.root};
    int pre = 0, post = 0;
    t.pre[t.root] = ++pre;
    t.order.push_back(t.root);
    while (!stack.empty()) {
        node_id u = stack.back();
        if (cursor[u] < first[u + 1]) {
            node_id c = kids[cursor[u]++];
            t.pre[c] = ++pre;
            t.order.push_back(c);
            stack.push_back(c);
        } else {
            t.post[u] = ++post;
            t.subtree[u] = pre - t.pre[u] + 1;
            stack.pop_back();
        }
    }
    charge(n + kids.size());
}

} // namespace detail

// Builds the index of the tree given by parent pointers. Children of a node
// are visited in increasing id order.
inline tree_index index_parent_tree(node_id root, std::vector<node_id> parent)
{
    tree_index t;
    t.root = root;
    t.parent = std::move(parent);
    std::size_t n = t.parent.size();
    std::vector<int> first(n + 1, 0);
    for (std::size_t v = 1; v < n; ++v)
        if (t.parent[v] != no_node) ++first[t.parent[v] + 1];
    for (std::size_t i = 1; i <= n; ++i) first[i] += first[i - 1];
    std::vector<node_id> kids(first[n]);
    std::vector<int> fill(first.begin(), first.end() - 1);
    for (std::size_t v = 1; v < n; ++v)
        if (t.parent[v] != no_node) kids[fill[t.parent[v]]++] = static_cast<node_id>(v);
    detail::number_tree(t, first, kids);
    return t;
}

// Index of the arborescence whose in-edge at node v is parent_edge[v].
// Children are visited in the out-list order of g. Throws if parent_edge is
// not an arborescence of the live nodes of g.
inline tree_index index_arborescence(const rooted_digraph& g, const std::vector<edge_id>& parent_edge)
{
    node_id n = g.node_count();
    tree_index t;
    t.root = g.root();
    t.parent.assign(n + 1, no_node);
    std::vector<int> first(n + 2, 0);
    for (node_id v = 1; v <= n; ++v) {
        if (!g.is_live(v) || v == g.root()) continue;
        edge_id e = parent_edge[v];
        if (e == no_edge || !g.is_linked(e) || g.head(e) != v)
            throw invariant_error("not an arborescence: bad in-edge");
        t.parent[v] = g.tail(e);
        ++first[g.tail(e) + 1];
    }
    if (parent_edge[g.root()] != no_edge) throw invariant_error("not an arborescence: root has an in-edge");
    for (node_id i = 1; i <= n + 1; ++i) first[i] += first[i - 1];
    std::vector<node_id> kids(first[n + 1]);
    std::vector<int> fill(first.begin(), first.end() - 1);
    for (node_id u = 1; u <= n; ++u) {
        if (!g.is_live(u)) continue;
        for (edge_id e = g.out_first(u); e; e = g.out_next(e))
            if (parent_edge[g.head(e)] == e) kids[fill[u]++] = g.head(e);
    }
    detail::number_tree(t, first, kids);
    if (t.order.size() != static_cast<std::size_t>(g.live_node_count()))
        throw invariant_error("not an arborescence: cycle or unreachable node");
    return t;
}

// Preorder ranks of an arborescence given as a set of edges.
inline std::vector<int> preorder(const rooted_digraph& g, const std::vector<edge_id>& arb)
{
    std::vector<edge_id> parent_edge(g.node_count() + 1, no_edge);
    for (edge_id e : arb) {
        if (!g.is_linked(e)) throw invariant_error("not an arborescence: absent edge");
        if (parent_edge[g.head(e)] != no_edge) throw invariant_error("not an arborescence: two in-edges");
        parent_edge[g.head(e)] = e;
    }
    return index_arborescence(g, parent_edge).pre;
}

} // namespace arbo
