#pragma once

#include <vector>

#include "arbo/graph.hpp"
#include "arbo/tree.hpp"

namespace arbo {

using dominator_tree = tree_index;

inline bool is_ancestor(const dominator_tree& t, node_id u, node_id v) { return t.is_ancestor(u, v); }

// Semidominators with path compression, then immediate dominators by the
// nearest-common-ancestor walk (semi-NCA). Dead nodes are ignored.
inline dominator_tree build_dominator_tree(const rooted_digraph& g)
{
    const node_id n = g.node_count();
    std::vector<int> num(n + 1, 0);
    std::vector<node_id> vertex(1, no_node);
    std::vector<int> dfs_parent(1, 0);
    vertex.reserve(n + 1);
    dfs_parent.reserve(n + 1);

    // iterative DFS, preorder numbers in num[]
    {
        std::vector<std::pair<node_id, edge_id>> stack;
        num[g.root()] = 1;
        vertex.push_back(g.root());
        dfs_parent.push_back(0);
        stack.emplace_back(g.root(), g.out_first(g.root()));
        std::uint64_t scanned = 0;
        while (!stack.empty()) {
            auto& [u, e] = stack.back();
            if (e == no_edge) {
                stack.pop_back();
                continue;
            }
            edge_id cur = e;
            e = g.out_next(cur);
            ++scanned;
            node_id w = g.head(cur);
            if (num[w] != 0) continue;
            num[w] = static_cast<int>(vertex.size());
            vertex.push_back(w);
            dfs_parent.push_back(num[u]);
            stack.emplace_back(w, g.out_first(w));
        }
        charge(scanned + vertex.size());
    }
    const int count = static_cast<int>(vertex.size()) - 1;
    if (count != g.live_node_count()) throw unreachable_error("some node is unreachable from the root");

    std::vector<int> semi(count + 1), label(count + 1), anc(count + 1, 0), idom(count + 1, 0);
    for (int i = 0; i <= count; ++i) semi[i] = label[i] = i;
    std::vector<int> path;
    auto eval = [&](int v) {
        if (anc[v] == 0) return v;
        int x = v;
        while (anc[anc[x]] != 0) {
            path.push_back(x);
            x = anc[x];
        }
        while (!path.empty()) {
            int y = path.back();
            path.pop_back();
            if (semi[label[anc[y]]] < semi[label[y]]) label[y] = label[anc[y]];
            anc[y] = anc[anc[y]];
        }
        return label[v];
    };
    std::uint64_t scanned = 0;
    for (int i = count; i >= 2; --i) {
        for (edge_id e = g.in_first(vertex[i]); e; e = g.in_next(e)) {
            ++scanned;
            int v = num[g.tail(e)];
            int u = eval(v);
            if (semi[u] < semi[i]) semi[i] = semi[u];
        }
        anc[i] = dfs_parent[i];
    }
    for (int i = 2; i <= count; ++i) {
        int d = dfs_parent[i];
        while (d > semi[i]) d = idom[d];
        idom[i] = d;
        ++scanned;
    }
    charge(scanned + count);

    std::vector<node_id> parent(n + 1, no_node);
    for (int i = 2; i <= count; ++i) parent[vertex[i]] = vertex[idom[i]];
    return index_parent_tree(g.root(), std::move(parent));
}

} // namespace arbo
