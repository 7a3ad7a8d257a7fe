#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "arbo/disjoint_pair.hpp"
#include "arbo/graph.hpp"
#include "arbo/instrument.hpp"

namespace arbo {

// Limits for the structural test. Counts are compared against
// factor * log2(n) (log2 clamped to at least 1), except where noted.
struct decomposition_thresholds {
    double c_heads = 32;         // nodes entered by a C edge
    double leaves = 8;           // leaves of A, and separately of B
    double splits = 8;           // each of the three almost-chain split counters
    double back_splits = 32;     // chain splits where (u_{j+1}, u_j) is not in B
    double c_size = 64;          // |C| limit, times n
    double chains = 64;          // chain count limit, times log^2 n
    double large_groups = 17;    // plain count
    double small_c = 1;          // fat-node search only when |C| > small_c * ceil(sqrt n)
};

inline double log2_clamped(node_id n) { return std::max(1.0, std::log2(static_cast<double>(std::max(n, 2)))); }

struct subchain {
    int chain = 0;
    int b = 0, e = 0;  // positions in the chain, inclusive
};

struct fat_node {
    node_id head = no_node;
    std::vector<edge_id> edges;  // the C'' edges entering head
    bool via_b = false;          // C' taken with respect to B
    bool reversed = false;       // children order reversed for C''
};

struct chain_decomposition {
    std::vector<std::vector<node_id>> chains;  // u_1..u_k, A edges forward
    std::vector<int> chain_of;                 // per node
    std::vector<int> position;                 // per node, index in its chain
    std::vector<std::uint8_t> interesting_node;
    std::vector<std::uint8_t> interesting;     // per index i = 1..n-1, h(a_i) interesting
    std::vector<subchain> subchains;
    std::optional<fat_node> fat;
    std::int64_t c_size = 0;
    std::int64_t c_heads = 0;
};

struct thin_verdict {
    bool thick = false;
    std::string reason;  // the first limit that was reached when thick
    chain_decomposition decomposition;
};

namespace detail {

// Singleton almost chains: the root, nodes with several A children, nodes
// entered by a C edge. The remaining nodes form maximal downward A paths.
inline std::vector<std::vector<node_id>> almost_chains(const rooted_digraph& g, const arborescence_pair& p,
                                                       const std::vector<std::uint8_t>& c_head)
{
    const node_id n = g.node_count();
    const tree_index& a = p.a;
    std::vector<std::uint8_t> single(n + 1, 0);
    std::vector<int> kids(n + 1, 0);
    for (node_id v = 1; v <= n; ++v)
        if (a.parent[v] != no_node) ++kids[a.parent[v]];
    for (node_id v = 1; v <= n; ++v) single[v] = v == g.root() || kids[v] > 1 || c_head[v];
    std::vector<std::vector<node_id>> out;
    for (node_id v : a.order) {
        if (single[v]) {
            out.push_back({v});
            continue;
        }
        if (!single[a.parent[v]]) continue;
        std::vector<node_id> path{v};
        node_id cur = v;
        while (kids[cur] == 1) {
            node_id child = a.order[a.pre[cur]];  // the only child follows in preorder
            if (single[child]) break;
            path.push_back(child);
            cur = child;
        }
        out.push_back(std::move(path));
    }
    charge(3 * static_cast<std::uint64_t>(n));
    return out;
}

} // namespace detail

// Decomposes a trimmed flat graph into chains, or reports that one of the
// counting limits was reached.
inline thin_verdict decompose(const rooted_digraph& g, const arborescence_pair& p,
                              const decomposition_thresholds& th = {})
{
    const node_id n = g.node_count();
    const double lg = log2_clamped(n);
    thin_verdict out;
    chain_decomposition& d = out.decomposition;
    auto thick = [&](std::string why) {
        out.thick = true;
        out.reason = std::move(why);
        return out;
    };

    d.c_size = static_cast<std::int64_t>(p.c_edges.size());
    std::vector<std::uint8_t> c_head(n + 1, 0), c_tail(n + 1, 0);
    for (edge_id e : p.c_edges) {
        if (!c_head[g.head(e)]) ++d.c_heads;
        c_head[g.head(e)] = 1;
        c_tail[g.tail(e)] = 1;
    }
    charge(p.c_edges.size());
    if (static_cast<double>(d.c_size) >= th.c_size * n) return thick("|C| limit");
    if (static_cast<double>(d.c_heads) >= th.c_heads * lg) return thick("C head limit");
    std::int64_t leaves_a = 0, leaves_b = 0;
    for (node_id v = 1; v <= n; ++v) {
        leaves_a += p.a.subtree[v] == 1;
        leaves_b += p.b.subtree[v] == 1;
    }
    if (static_cast<double>(leaves_a) >= th.leaves * lg) return thick("A leaf limit");
    if (static_cast<double>(leaves_b) >= th.leaves * lg) return thick("B leaf limit");

    std::vector<std::vector<node_id>> almost = detail::almost_chains(g, p, c_head);

    // split where u_{j+1} is not a B ancestor of u_j
    std::int64_t down = 0, forward = 0, backward = 0;
    std::vector<std::vector<node_id>> pieces;
    for (auto& ch : almost) {
        std::vector<node_id> cur{ch[0]};
        for (std::size_t j = 0; j + 1 < ch.size(); ++j) {
            node_id u = ch[j], w = ch[j + 1];
            if (!p.b.is_ancestor(w, u)) {
                if (p.b.is_ancestor(u, w))
                    ++down;
                else if (p.b.pre[u] < p.b.pre[w])
                    ++forward;
                else
                    ++backward;
                pieces.push_back(std::move(cur));
                cur.clear();
            }
            cur.push_back(w);
        }
        pieces.push_back(std::move(cur));
    }
    charge(static_cast<std::uint64_t>(n));
    if (static_cast<double>(down) >= th.splits * lg) return thick("B descending split limit");
    if (static_cast<double>(forward) >= th.splits * lg) return thick("B forward split limit");
    if (static_cast<double>(backward) >= th.splits * lg) return thick("B backward split limit");

    // split where (u_{j+1}, u_j) is not the B edge into u_j
    std::int64_t back = 0;
    for (auto& ch : pieces) {
        std::vector<node_id> cur{ch[0]};
        for (std::size_t j = 0; j + 1 < ch.size(); ++j) {
            node_id u = ch[j], w = ch[j + 1];
            if (g.tail(p.b_by_head[u]) != w) {
                ++back;
                d.chains.push_back(std::move(cur));
                cur.clear();
            }
            cur.push_back(w);
        }
        d.chains.push_back(std::move(cur));
    }
    charge(static_cast<std::uint64_t>(n));
    if (static_cast<double>(back) >= th.back_splits * lg) return thick("B parent split limit");
    if (static_cast<double>(d.chains.size()) > th.chains * lg * lg) return thick("chain count limit");

    d.chain_of.assign(n + 1, -1);
    d.position.assign(n + 1, -1);
    for (std::size_t c = 0; c < d.chains.size(); ++c)
        for (std::size_t k = 0; k < d.chains[c].size(); ++k) {
            d.chain_of[d.chains[c][k]] = static_cast<int>(c);
            d.position[d.chains[c][k]] = static_cast<int>(k);
        }

    // Interesting: chain endpoints and nodes with an outgoing edge other than
    // the two chain edges of an inner node (C edges and B edges leaving the
    // chain).
    d.interesting_node.assign(n + 1, 0);
    std::vector<int> outdeg(n + 1, 0);
    g.for_each_edge([&](edge_id e) { ++outdeg[g.tail(e)]; });
    for (auto& ch : d.chains) {
        for (std::size_t k = 0; k < ch.size(); ++k) {
            node_id u = ch[k];
            bool end = k == 0 || k + 1 == ch.size();
            d.interesting_node[u] = end || outdeg[u] > 2 || c_tail[u];
        }
    }
    d.interesting.assign(n, 0);
    for (int i = 1; i < n; ++i) d.interesting[i] = d.interesting_node[p.a.order[i]];
    for (std::size_t c = 0; c < d.chains.size(); ++c) {
        const auto& ch = d.chains[c];
        int b = 0;
        for (int k = 1; k < static_cast<int>(ch.size()); ++k) {
            if (!d.interesting_node[ch[k]]) continue;
            d.subchains.push_back({static_cast<int>(c), b, k});
            b = k;
        }
        if (ch.size() == 1) d.subchains.push_back({static_cast<int>(c), 0, 0});
    }
    charge(2 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(g.edge_count()));
    return out;
}

// Looks for a head receiving a constant fraction of C. Returns thick when at
// least `large_groups` heads each receive |C''| / log^2 n edges.
inline std::optional<fat_node> find_fat_node(const rooted_digraph& g, const arborescence_pair& p,
                                             thin_verdict& verdict, const decomposition_thresholds& th = {})
{
    const node_id n = g.node_count();
    const double lg = log2_clamped(n);
    const std::size_t c = p.c_edges.size();
    if (static_cast<double>(c) <= th.small_c * std::ceil(std::sqrt(static_cast<double>(n)))) return std::nullopt;

    // C': v not an ancestor of u in the chosen tree
    std::vector<edge_id> ca, cb;
    for (edge_id e : p.c_edges) {
        if (!p.a.is_ancestor(g.head(e), g.tail(e))) ca.push_back(e);
        if (!p.b.is_ancestor(g.head(e), g.tail(e))) cb.push_back(e);
    }
    fat_node best;
    best.via_b = 2 * ca.size() < c;
    const tree_index& t = best.via_b ? p.b : p.a;
    const std::vector<edge_id>& c1 = best.via_b ? cb : ca;

    // C'': tails before heads in preorder, possibly with children reversed;
    // u ancestor of v stays forward, incomparable pairs flip
    std::vector<edge_id> fwd, rev;
    for (edge_id e : c1) {
        node_id u = g.tail(e), v = g.head(e);
        if (t.pre[u] < t.pre[v]) fwd.push_back(e);
        if (t.is_ancestor(u, v) || t.pre[u] > t.pre[v]) rev.push_back(e);
    }
    best.reversed = fwd.size() < rev.size();
    const std::vector<edge_id>& c2 = best.reversed ? rev : fwd;
    charge(3 * c);

    std::vector<std::vector<edge_id>> groups(n + 1);
    for (edge_id e : c2) groups[g.head(e)].push_back(e);
    double cutoff = static_cast<double>(c2.size()) / (lg * lg);
    int large = 0;
    node_id head = no_node;
    for (node_id v = 1; v <= n; ++v) {
        if (groups[v].empty()) continue;
        if (static_cast<double>(groups[v].size()) >= cutoff) ++large;
        if (head == no_node || groups[v].size() > groups[head].size()) head = v;
    }
    charge(static_cast<std::uint64_t>(n) + c2.size());
    if (static_cast<double>(large) >= th.large_groups) {
        verdict.thick = true;
        verdict.reason = "large group limit";
        return std::nullopt;
    }
    if (head == no_node) return std::nullopt;
    best.head = head;
    best.edges = std::move(groups[head]);
    return best;
}

// Full structural test: decomposition, then the fat-node analysis.
inline thin_verdict classify_thin(const rooted_digraph& g, const arborescence_pair& p,
                                  const decomposition_thresholds& th = {})
{
    thin_verdict v = decompose(g, p, th);
    if (v.thick) return v;
    std::optional<fat_node> f = find_fat_node(g, p, v, th);
    if (!v.thick) v.decomposition.fat = std::move(f);
    return v;
}

// Chain invariants: A edges forward, B edges backward, inner nodes entered
// only by those two edges, and every node in exactly one chain.
inline bool chains_well_formed(const rooted_digraph& g, const arborescence_pair& p, const chain_decomposition& d)
{
    const node_id n = g.node_count();
    std::vector<int> seen(n + 1, 0);
    for (const auto& ch : d.chains) {
        if (ch.empty()) return false;
        for (std::size_t k = 0; k < ch.size(); ++k) {
            node_id u = ch[k];
            if (u < 1 || u > n || seen[u]++) return false;
            if (k + 1 < ch.size()) {
                node_id w = ch[k + 1];
                if (g.tail(p.a_by_head[w]) != u || g.tail(p.b_by_head[u]) != w) return false;
            }
            if (k > 0 && k + 1 < ch.size()) {
                int in = 0;
                g.for_each_in(u, [&](edge_id) { ++in; });
                if (in != 2) return false;
            }
        }
    }
    for (node_id v = 1; v <= n; ++v)
        if (seen[v] != 1) return false;
    return true;
}

} // namespace arbo
