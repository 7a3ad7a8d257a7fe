#pragma once

#include <algorithm>
#include <vector>

#include "arbo/chain_decomposition.hpp"
#include "arbo/disjoint_pair.hpp"
#include "arbo/graph.hpp"
#include "arbo/instrument.hpp"
#include "arbo/trim_flatten.hpp"

namespace arbo {

// A long subchain u_b..u_e (e >= b + 2) replaced by (u_b, u_e) and (u_e, u_b).
// Forward emulates f_k = (u_k, u_{k+1}), backward emulates g_k = (u_{k+1}, u_k),
// k = b..e-1. Subchains with e = b + 1 self-emulate.
struct subchain_gadget {
    int chain = 0;
    int b = 0, e = 0;
    node_id ub = no_node, ue = no_node;
    int base = 0;  // A index of u_b; u_{b+k} has index base + k
};

struct emulation_edge {
    enum kind_t : std::uint8_t { self, forward, backward };
    node_id tail = no_node, head = no_node;  // H node ids
    kind_t kind = self;
    edge_id slot = no_edge;                  // self: the G slot
    int gadget = -1;
};

// H for one Thin decomposition, and extraction of NT(G_i) through H'_i. The
// graph, pair and decomposition must outlive the emulator, unchanged.
class emulator {
public:
    emulator(const rooted_digraph& g, const arborescence_pair& p, const chain_decomposition& d)
        : g_(&g), p_(&p), d_(&d)
    {
        const node_id n = g.node_count();
        std::vector<std::uint8_t> inner(n + 1, 0);
        std::vector<int> owner(g.slot_bound() + 1, -1);
        for (const subchain& s : d.subchains) {
            if (s.e - s.b < 2) continue;
            const auto& ch = d.chains[s.chain];
            subchain_gadget gd{s.chain, s.b, s.e, ch[s.b], ch[s.e], p.a.pre[ch[s.b]] - 1};
            int id = static_cast<int>(gadgets_.size());
            for (int k = s.b; k < s.e; ++k) {
                owner[fwd(gd, k)] = id;
                owner[bwd(gd, k)] = id;
            }
            for (int k = s.b + 1; k < s.e; ++k) inner[ch[k]] = 1;
            gadgets_.push_back(gd);
        }
        h_id_.assign(n + 1, no_node);
        node_id k = 0;
        for (node_id v = 1; v <= n; ++v)
            if (!inner[v]) h_id_[v] = ++k;
        h_nodes_ = k;
        g.for_each_edge([&](edge_id e) {
            if (owner[e] < 0)
                edges_.push_back({h_id_[g.tail(e)], h_id_[g.head(e)], emulation_edge::self, e, -1});
        });
        for (std::size_t j = 0; j < gadgets_.size(); ++j) {
            const subchain_gadget& gd = gadgets_[j];
            int id = static_cast<int>(j);
            edges_.push_back({h_id_[gd.ub], h_id_[gd.ue], emulation_edge::forward, no_edge, id});
            edges_.push_back({h_id_[gd.ue], h_id_[gd.ub], emulation_edge::backward, no_edge, id});
        }
        charge(2 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(g.edge_count()));
        space_.set(static_cast<std::int64_t>(edges_.size() + gadgets_.size()) + 2 * n);
    }

    node_id node_count() const { return h_nodes_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<emulation_edge>& edges() const { return edges_; }
    const std::vector<subchain_gadget>& gadgets() const { return gadgets_; }
    node_id h_node(node_id v) const { return h_id_[v]; }

    bool is_interesting(int i) const
    {
        require(i >= 1 && i < g_->node_count(), "index out of range");
        return d_->interesting[i] != 0;
    }

    // G slots emulated by H edge j.
    std::vector<edge_id> emulated(std::size_t j) const
    {
        const emulation_edge& h = edges_[j];
        if (h.kind == emulation_edge::self) return {h.slot};
        std::vector<edge_id> out;
        const subchain_gadget& gd = gadgets_[h.gadget];
        for (int k = gd.b; k < gd.e; ++k) out.push_back(h.kind == emulation_edge::forward ? fwd(gd, k) : bwd(gd, k));
        return out;
    }

    // Whether H edge j survives in H'_i: every emulated edge must be in G'_i.
    bool present(std::size_t j, int i) const
    {
        const emulation_edge& h = edges_[j];
        if (h.kind == emulation_edge::self) return self_present(h.slot, i);
        const subchain_gadget& gd = gadgets_[h.gadget];
        if (h.kind == emulation_edge::forward) return first_removed_forward(gd, i) == gd.e;
        return last_removed_backward(gd, i) == gd.b;
    }

    // H'_i as a graph over the H node ids; payload of each edge is the index
    // in edges() plus one.
    rooted_digraph restricted(int i) const
    {
        require(i >= 1 && i < g_->node_count(), "index out of range");
        rooted_digraph h(h_nodes_, h_id_[g_->root()]);
        for (std::size_t j = 0; j < edges_.size(); ++j)
            if (present(j, i)) h.add_edge(edges_[j].tail, edges_[j].head, static_cast<payload_id>(j + 1));
        charge(edges_.size());
        return h;
    }

    // NT(G_i) as G slots, in a fixed order.
    std::vector<edge_id> extract(int i) const
    {
        std::vector<edge_id> out;
        walk(i, [&](edge_id e) { out.push_back(e); });
        return out;
    }

    std::size_t count(int i) const
    {
        std::size_t c = 0;
        walk(i, [&](edge_id) { ++c; });
        return c;
    }

private:
    edge_id fwd(const subchain_gadget& gd, int k) const { return p_->a_by_head[d_->chains[gd.chain][k + 1]]; }
    edge_id bwd(const subchain_gadget& gd, int k) const { return p_->b_by_head[d_->chains[gd.chain][k]]; }

    int index(node_id v) const { return p_->a.pre[v] - 1; }

    // G'_i keeps, at heads of index < i, only the A edge, and drops a_i.
    bool self_present(edge_id s, int i) const
    {
        node_id v = g_->head(s);
        int x = index(v);
        if (x == i) return s != p_->a_by_head[v];
        return x > i || s == p_->a_by_head[v];
    }

    // e': f_b..f_{e'-1} survive; f_k is a_i exactly when base + k + 1 = i.
    static int first_removed_forward(const subchain_gadget& gd, int i)
    {
        int k = gd.b + (i - gd.base - 1);
        return k >= gd.b && k < gd.e ? k : gd.e;
    }

    // b': g_{b'}..g_{e-1} survive; g_k is dropped when base + k - b < i.
    static int last_removed_backward(const subchain_gadget& gd, int i)
    {
        return gd.b + std::clamp(i - gd.base, 0, gd.e - gd.b);
    }

    template <class F>
    void walk(int i, F&& emit) const
    {
        rooted_digraph h = restricted(i);
        std::vector<edge_class> cls(edges_.size(), edge_class::useless);
        {
            std::vector<edge_class> by_slot = classify_by_slot(h);
            h.for_each_edge([&](edge_id s) { cls[h.payload(s) - 1] = by_slot[s]; });
        }
        std::uint64_t emitted = 0;
        std::vector<edge_class> fwd_cls(gadgets_.size(), edge_class::useless), bwd_cls(gadgets_.size(), edge_class::useless);
        for (std::size_t j = 0; j < edges_.size(); ++j) {
            const emulation_edge& he = edges_[j];
            if (he.kind == emulation_edge::self) {
                if (cls[j] == edge_class::nontrivial) {
                    emit(he.slot);
                    ++emitted;
                }
            } else if (he.kind == emulation_edge::forward) {
                fwd_cls[he.gadget] = cls[j];
            } else {
                bwd_cls[he.gadget] = cls[j];
            }
        }
        for (std::size_t j = 0; j < gadgets_.size(); ++j) {
            const subchain_gadget& gd = gadgets_[j];
            const int b = gd.b, e = gd.e;
            const int ep = first_removed_forward(gd, i), bp = last_removed_backward(gd, i);
            require(ep >= bp - 1, "emulator: forward and backward windows overlap");
            const edge_class cf = fwd_cls[j], cb = bwd_cls[j];
            const bool pf = cf != edge_class::useless, pb = cb != edge_class::useless;
            // some arborescence of H'_i avoids both gadget edges
            const bool p0 = pf == pb || (pf ? cf != edge_class::forced : cb != edge_class::forced);
            // non-useless forward edges f_k, k in [lf, hf]; backward g_k, k in [lg, hg]
            int lf = b, hf = pf ? e - 1 : p0 ? std::min(e - 2, ep - 1) : b - 1;
            int lg = pb ? b : p0 ? std::max(b + 1, bp) : e, hg = e - 1;
            if (cf == edge_class::nontrivial) {
                emit(fwd(gd, e - 1));
                ++emitted;
            }
            if (cb == edge_class::nontrivial) {
                emit(bwd(gd, b));
                ++emitted;
            }
            // f_k with k + 1 inner competes with g_{k+1}
            for (int k = std::max({b, lf, lg - 1}), hi = std::min({e - 2, hf, hg - 1}); k <= hi; ++k) {
                emit(fwd(gd, k));
                ++emitted;
            }
            // g_k with k inner competes with f_{k-1}
            for (int k = std::max({b + 1, lg, lf + 1}), hi = std::min({e - 1, hg, hf + 1}); k <= hi; ++k) {
                emit(bwd(gd, k));
                ++emitted;
            }
        }
        charge(emitted + gadgets_.size());
    }

    const rooted_digraph* g_;
    const arborescence_pair* p_;
    const chain_decomposition* d_;
    std::vector<subchain_gadget> gadgets_;
    std::vector<emulation_edge> edges_;
    std::vector<node_id> h_id_;
    node_id h_nodes_ = 0;
    space_charge space_;
};

} // namespace arbo
