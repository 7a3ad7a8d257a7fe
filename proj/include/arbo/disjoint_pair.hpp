#pragma once

#include <utility>
#include <vector>

#include "arbo/graph.hpp"
#include "arbo/instrument.hpp"
#include "arbo/tree.hpp"

namespace arbo {

// Two edge-disjoint arborescences A and B such that no edge (u, v) has v as
// an ancestor of u in both.
struct arborescence_pair {
    std::vector<edge_id> a_by_head;  // slot of the A edge entering v
    std::vector<edge_id> b_by_head;
    std::vector<edge_id> a_edges;    // a_1..a_{n-1}, heads in A preorder
    std::vector<edge_id> b_edges;    // b_i shares its head with a_i
    std::vector<edge_id> c_edges;    // the remaining edges, in list order
    tree_index a;                    // children in out-list order
    tree_index b;
};

// Fills the ordered lists and tree indices from the two parent-edge maps.
// Throws invariant_error when either map is not an arborescence.
inline arborescence_pair pair_from_parents(const rooted_digraph& g, std::vector<edge_id> a_by_head,
                                           std::vector<edge_id> b_by_head)
{
    arborescence_pair p;
    p.a = index_arborescence(g, a_by_head);
    p.b = index_arborescence(g, b_by_head);
    p.a_by_head = std::move(a_by_head);
    p.b_by_head = std::move(b_by_head);
    p.a_edges.reserve(p.a.order.size());
    p.b_edges.reserve(p.a.order.size());
    for (std::size_t k = 1; k < p.a.order.size(); ++k) {
        node_id v = p.a.order[k];
        p.a_edges.push_back(p.a_by_head[v]);
        p.b_edges.push_back(p.b_by_head[v]);
    }
    g.for_each_edge([&](edge_id e) {
        node_id v = g.head(e);
        if (p.a_by_head[v] != e && p.b_by_head[v] != e) p.c_edges.push_back(e);
    });
    charge(static_cast<std::uint64_t>(g.edge_count()));
    return p;
}

// Disjointness, arborescence structure and the non-ancestor property.
inline bool verify_pair_property(const rooted_digraph& g, const arborescence_pair& p)
{
    const node_id n = g.node_count();
    if (p.a_by_head.size() != static_cast<std::size_t>(n + 1) || p.b_by_head.size() != p.a_by_head.size())
        return false;
    tree_index ta, tb;
    try {
        ta = index_arborescence(g, p.a_by_head);
        tb = index_arborescence(g, p.b_by_head);
    } catch (const invariant_error&) {
        return false;
    }
    for (node_id v = 1; v <= n; ++v)
        if (g.is_live(v) && v != g.root() && p.a_by_head[v] == p.b_by_head[v]) return false;
    bool ok = true;
    g.for_each_edge([&](edge_id e) {
        node_id u = g.tail(e), v = g.head(e);
        if (ta.is_ancestor(v, u) && tb.is_ancestor(v, u)) ok = false;
    });
    charge(static_cast<std::uint64_t>(g.edge_count() + n));
    return ok;
}

namespace detail {

// Path compression over the DFS forest restricted to preorder numbers above
// c, keeping in label[] the node of minimum semi on the compressed path.
inline void compress_above(std::vector<int>& parent, std::vector<int>& label, const std::vector<int>& semi,
                           std::vector<int>& path, int v, int c)
{
    path.clear();
    while (parent[v] > c) {
        path.push_back(v);
        v = parent[v];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        int x = *it;
        int p = parent[x];
        if (semi[label[p]] < semi[label[x]]) label[x] = label[p];
        parent[x] = parent[p];
    }
    charge(path.size() + 1);
}

} // namespace detail

// Divergent spanning trees of the graph with every edge subdivided. Red is
// the DFS tree, blue follows the arcs that realise semidominators, and a node
// swaps colours when its relative dominator is not itself red-swapped and has
// a smaller semidominator. In the subdivided graph a shared parent of an
// original node would be a subdivision node dominating it, i.e. a bridge, so
// on graphs without bridges the two trees are edge-disjoint in g.
inline arborescence_pair find_disjoint_pair(const rooted_digraph& g)
{
    const node_id n = g.node_count();
    std::vector<edge_id> es = g.edges_in_order();
    const int m = static_cast<int>(es.size());
    const int total = n + m;  // node n + 1 + k subdivides es[k]
    std::vector<int> slot_pos(g.slot_bound() + 1, -1);
    for (int k = 0; k < m; ++k) slot_pos[es[k]] = k;

    // iterative DFS of the subdivided graph
    std::vector<int> num(total + 1, 0);
    std::vector<int> vertex(1, 0);
    std::vector<int> dfs_parent(1, 0);
    vertex.reserve(total + 1);
    dfs_parent.reserve(total + 1);
    {
        struct frame {
            int node;
            edge_id next;  // original nodes: next out-edge; subdivisions: pending flag
        };
        std::vector<frame> stack;
        auto visit = [&](int w, int parent_pre) {
            num[w] = static_cast<int>(vertex.size());
            vertex.push_back(w);
            dfs_parent.push_back(parent_pre);
            stack.push_back({w, w <= n ? g.out_first(w) : 1});
        };
        visit(g.root(), 0);
        while (!stack.empty()) {
            frame& f = stack.back();
            int w = f.node;
            if (w <= n) {
                if (f.next == no_edge) {
                    stack.pop_back();
                    continue;
                }
                edge_id e = f.next;
                f.next = g.out_next(e);
                int x = n + 1 + slot_pos[e];
                if (!num[x]) visit(x, num[w]);
            } else {
                if (!f.next) {
                    stack.pop_back();
                    continue;
                }
                f.next = 0;
                node_id h = g.head(es[w - n - 1]);
                if (!num[h]) visit(h, num[w]);
            }
        }
    }
    const int count = static_cast<int>(vertex.size()) - 1;
    require(count == static_cast<int>(g.live_node_count()) + m, "find_disjoint_pair: unreachable node");
    charge(static_cast<std::uint64_t>(total + 2 * m));

    std::vector<int> parent(dfs_parent), semi(count + 1), label(count + 1), dom(count + 1, 0);
    std::vector<int> bucket(count + 1, 0), eps(count + 1), red(count + 1), blue(count + 1);
    std::vector<std::uint8_t> swapped(count + 1, 0);
    for (int i = 0; i <= count; ++i) {
        semi[i] = label[i] = eps[i] = blue[i] = i;
        red[i] = dfs_parent[i];
    }
    std::vector<int> path;
    std::uint64_t scanned = 0;
    auto relax = [&](int i, int v) {
        ++scanned;
        int u = v;
        if (v > i) {
            detail::compress_above(parent, label, semi, path, v, i);
            u = label[v];
        }
        if (semi[u] < semi[i]) {
            semi[i] = semi[u];
            blue[i] = v;
        }
    };
    for (int i = count; i > 1; --i) {
        for (int v = bucket[i]; v; v = bucket[v]) {
            detail::compress_above(parent, label, semi, path, v, i);
            int u = label[v];
            dom[v] = semi[u] < semi[v] ? u : i;
            eps[v] = u;
        }
        int w = vertex[i];
        if (w <= n) {
            for (edge_id e = g.in_first(w); e; e = g.in_next(e)) relax(i, num[n + 1 + slot_pos[e]]);
        } else {
            relax(i, num[g.tail(es[w - n - 1])]);
        }
        int s = semi[i];
        if (s != dfs_parent[i]) {
            bucket[i] = bucket[s];
            bucket[s] = i;
        } else {
            dom[i] = s;
        }
    }
    for (int v = bucket[1]; v; v = bucket[v]) dom[v] = 1;
    dom[1] = 1;
    for (int i = 2; i <= count; ++i)
        if (dom[i] != semi[i]) dom[i] = dom[dom[i]];
    for (int i = 2; i <= count; ++i) {
        if (!swapped[eps[i]] && semi[eps[i]] < semi[i]) {
            swapped[i] = 1;
            std::swap(red[i], blue[i]);
        } else if (blue[i] == dom[i] || red[i] == dom[i]) {
            blue[i] = red[i] = dom[i];
        }
    }
    charge(scanned + 4 * static_cast<std::uint64_t>(count));

    std::vector<edge_id> a_by_head(n + 1, no_edge), b_by_head(n + 1, no_edge);
    for (int i = 2; i <= count; ++i) {
        int w = vertex[i];
        if (w > n) continue;
        int x = vertex[red[i]], y = vertex[blue[i]];
        require(x > n && y > n, "find_disjoint_pair: parent is not a subdivision node");
        a_by_head[w] = es[x - n - 1];
        b_by_head[w] = es[y - n - 1];
        if (a_by_head[w] == b_by_head[w]) throw invariant_error("find_disjoint_pair: shared edge, graph has a bridge");
    }
    arborescence_pair p = pair_from_parents(g, std::move(a_by_head), std::move(b_by_head));
    if (!verify_pair_property(g, p)) throw invariant_error("find_disjoint_pair: pair property violated");
    return p;
}

} // namespace arbo
