#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arbo/delta.hpp"
#include "arbo/graph.hpp"

namespace arbo {

using big_count = boost::multiprecision::cpp_int;

// Sorted list of sorted leaf-id lists.
using canonical_arb_set = std::vector<std::vector<edge_id>>;

struct oracle_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct plain_edge {
    edge_id id;
    node_id tail, head;
};

// Linked edges of g by leaf id; every payload must be a leaf.
inline std::vector<plain_edge> leaf_edges(const rooted_digraph& g)
{
    std::vector<plain_edge> es;
    g.for_each_edge([&](edge_id e) { es.push_back({g.payload(e), g.tail(e), g.head(e)}); });
    std::sort(es.begin(), es.end(), [](const plain_edge& a, const plain_edge& b) { return a.id < b.id; });
    return es;
}

} // namespace detail

// True iff the leaf ids form an arborescence of g rooted at g.root().
inline bool is_arborescence(const rooted_digraph& g, const std::vector<edge_id>& leaves)
{
    std::vector<detail::plain_edge> es = detail::leaf_edges(g);
    std::vector<node_id> parent(g.node_count() + 1, no_node);
    std::vector<std::uint8_t> used;
    edge_id maxid = es.empty() ? 0 : es.back().id;
    used.assign(maxid + 1, 0);
    std::vector<int> by_id(maxid + 1, -1);
    for (std::size_t i = 0; i < es.size(); ++i) by_id[es[i].id] = static_cast<int>(i);
    for (edge_id id : leaves) {
        if (id < 1 || id > maxid || by_id[id] < 0 || used[id]) return false;
        used[id] = 1;
        const detail::plain_edge& e = es[by_id[id]];
        if (e.head == g.root() || parent[e.head] != no_node) return false;
        parent[e.head] = e.tail;
    }
    if (static_cast<std::int64_t>(leaves.size()) != g.live_node_count() - 1) return false;
    // every node must reach the root through parents without repeating
    std::vector<int> state(g.node_count() + 1, 0);
    state[g.root()] = 2;
    for (node_id v = 1; v <= g.node_count(); ++v) {
        if (!g.is_live(v) || state[v] == 2) continue;
        std::vector<node_id> path;
        node_id x = v;
        while (x != no_node && state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = parent[x];
        }
        if (x == no_node || state[x] == 1) return false;
        for (node_id y : path) state[y] = 2;
    }
    return true;
}

// Contract/delete recursion over edges in increasing id order, include branch
// first. Including (u, v) fixes v's parent; it is skipped when v already has
// one or when it would close a cycle.
inline canonical_arb_set brute_force_enumerate(const rooted_digraph& g, node_id cap = 12)
{
    if (g.live_node_count() > cap) throw oracle_error("brute force cap exceeded");
    std::vector<detail::plain_edge> es = detail::leaf_edges(g);
    const node_id n = g.node_count();
    std::vector<node_id> parent(n + 1, no_node);
    std::vector<int> remaining(n + 1, 0);
    for (const auto& e : es) ++remaining[e.head];
    std::int64_t need = g.live_node_count() - 1;
    std::vector<edge_id> chosen;
    canonical_arb_set out;

    auto creates_cycle = [&](node_id u, node_id v) {
        for (node_id x = u; x != no_node; x = parent[x])
            if (x == v) return true;
        return false;
    };
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (static_cast<std::int64_t>(chosen.size()) == need) {
            out.push_back(chosen);
            return;
        }
        if (k == es.size()) return;
        const detail::plain_edge& e = es[k];
        --remaining[e.head];
        if (e.head != g.root() && parent[e.head] == no_node && !creates_cycle(e.tail, e.head)) {
            parent[e.head] = e.tail;
            chosen.push_back(e.id);
            self(self, k + 1);
            chosen.pop_back();
            parent[e.head] = no_node;
        }
        // exclude: still possible only if the head can get a parent later
        if (e.head == g.root() || parent[e.head] != no_node || remaining[e.head] > 0) self(self, k + 1);
        ++remaining[e.head];
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// Directed matrix-tree theorem: determinant of the in-degree Laplacian with
// the root row and column removed, by fraction-free (Bareiss) elimination.
inline big_count count_arborescences(const rooted_digraph& g, node_id root)
{
    const node_id n = g.node_count();
    std::vector<node_id> idx(n + 1, -1);
    int k = 0;
    for (node_id v = 1; v <= n; ++v)
        if (g.is_live(v) && v != root) idx[v] = k++;
    if (k == 0) return 1;
    std::vector<std::vector<big_count>> a(k, std::vector<big_count>(k, 0));
    g.for_each_edge([&](edge_id e) {
        node_id u = g.tail(e), v = g.head(e);
        if (v == root) return;
        a[idx[v]][idx[v]] += 1;
        if (u != root) a[idx[u]][idx[v]] -= 1;
    });
    big_count prev = 1;
    int sign = 1;
    for (int p = 0; p < k; ++p) {
        if (a[p][p] == 0) {
            int q = p + 1;
            while (q < k && a[q][p] == 0) ++q;
            if (q == k) return 0;
            std::swap(a[p], a[q]);
            sign = -sign;
        }
        for (int i = p + 1; i < k; ++i) {
            for (int j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    big_count det = a[k - 1][k - 1];
    return sign < 0 ? big_count(-det) : det;
}

inline big_count count_arborescences(const rooted_digraph& g) { return count_arborescences(g, g.root()); }

// Replays a delta stream, validating every report against g.
inline canonical_arb_set replay_and_validate(const rooted_digraph& g, const std::vector<delta_event>& events)
{
    edge_id maxid = 0;
    g.for_each_edge([&](edge_id e) { maxid = std::max(maxid, g.payload(e)); });
    std::vector<std::uint8_t> in(maxid + 1, 0);
    std::vector<edge_id> current;
    canonical_arb_set out;
    std::set<std::vector<edge_id>> seen;
    std::size_t pos = 0;
    for (const delta_event& ev : events) {
        ++pos;
        std::string where = " at event " + std::to_string(pos);
        switch (ev.kind) {
        case delta_kind::add:
            if (ev.id < 1 || ev.id > maxid) throw oracle_error("unknown edge id" + where);
            if (in[ev.id]) throw oracle_error("double add" + where);
            in[ev.id] = 1;
            break;
        case delta_kind::remove:
            if (ev.id < 1 || ev.id > maxid || !in[ev.id]) throw oracle_error("remove of absent edge" + where);
            in[ev.id] = 0;
            break;
        case delta_kind::report: {
            current.clear();
            for (edge_id e = 1; e <= maxid; ++e)
                if (in[e]) current.push_back(e);
            if (!is_arborescence(g, current)) throw oracle_error("reported set is not an arborescence" + where);
            if (!seen.insert(current).second) throw oracle_error("duplicate arborescence" + where);
            out.push_back(current);
            break;
        }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace arbo
