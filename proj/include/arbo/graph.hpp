#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "arbo/instrument.hpp"
#include "arbo/payload.hpp"
#include "arbo/types.hpp"

namespace arbo {

struct edge_record {
    node_id tail = no_node;
    node_id head = no_node;
    payload_id payload = 0;
    edge_id out_prev = no_edge, out_next = no_edge;
    edge_id in_prev = no_edge, in_next = no_edge;
    bool linked = false;
};

struct journal_mark {
    std::size_t position = 0;
    std::size_t depth = 0;
};

// Rooted multigraph with intrusive doubly linked in/out lists. Every mutation
// after construction goes through a journal so that rollback restores the
// exact adjacency order.
class rooted_digraph {
public:
    rooted_digraph() = default;
    rooted_digraph(node_id n, node_id root) { reset(n, root); }

    void reset(node_id n, node_id root)
    {
        require(n >= 1 && root >= 1 && root <= n, "root out of range");
        n_ = n;
        root_ = root;
        nodes_.assign(n + 1, node_lists{});
        live_.assign(n + 1, 1);
        live_[0] = 0;
        edges_.assign(1, edge_record{});
        linked_edges_ = 0;
        journal_.clear();
        pool_.clear();
        open_marks_.clear();
        update_space();
    }

    // Builder; only valid while the journal is empty.
    edge_id add_edge(node_id u, node_id v, payload_id payload)
    {
        require(journal_.empty(), "add_edge on a journaled graph");
        require(u >= 1 && u <= n_ && v >= 1 && v <= n_, "endpoint out of range");
        require(u != v, "self-loop");
        edge_id e = static_cast<edge_id>(edges_.size());
        edges_.push_back(edge_record{u, v, payload});
        link_back(e);
        update_space();
        return e;
    }

    node_id node_count() const { return n_; }
    node_id root() const { return root_; }
    bool is_live(node_id v) const { return live_[v] != 0; }
    edge_id slot_bound() const { return static_cast<edge_id>(edges_.size()) - 1; }
    std::int64_t edge_count() const { return linked_edges_; }
    std::int64_t live_node_count() const
    {
        std::int64_t c = 0;
        for (node_id v = 1; v <= n_; ++v) c += live_[v];
        return c;
    }

    const edge_record& edge(edge_id e) const { return edges_[e]; }
    node_id tail(edge_id e) const { return edges_[e].tail; }
    node_id head(edge_id e) const { return edges_[e].head; }
    payload_id payload(edge_id e) const { return edges_[e].payload; }
    bool is_linked(edge_id e) const { return edges_[e].linked; }

    edge_id out_first(node_id u) const { return nodes_[u].out_head; }
    edge_id out_next(edge_id e) const { return edges_[e].out_next; }
    edge_id in_first(node_id v) const { return nodes_[v].in_head; }
    edge_id in_next(edge_id e) const { return edges_[e].in_next; }

    template <class F>
    void for_each_out(node_id u, F&& f) const
    {
        for (edge_id e = nodes_[u].out_head; e != no_edge;) {
            edge_id nx = edges_[e].out_next;
            f(e);
            e = nx;
        }
    }
    template <class F>
    void for_each_in(node_id v, F&& f) const
    {
        for (edge_id e = nodes_[v].in_head; e != no_edge;) {
            edge_id nx = edges_[e].in_next;
            f(e);
            e = nx;
        }
    }
    template <class F>
    void for_each_edge(F&& f) const
    {
        for (node_id u = 1; u <= n_; ++u)
            if (live_[u]) for_each_out(u, f);
    }
    std::vector<edge_id> edges_in_order() const
    {
        std::vector<edge_id> out;
        out.reserve(linked_edges_);
        for_each_edge([&](edge_id e) { out.push_back(e); });
        return out;
    }

    // ---- journal ----

    journal_mark mark()
    {
        journal_mark m{journal_.size(), open_marks_.size() + 1};
        open_marks_.push_back(m.position);
        return m;
    }

    void rollback(journal_mark m)
    {
        if (open_marks_.size() != m.depth || open_marks_.back() != m.position)
            throw invariant_error("non-LIFO rollback");
        while (journal_.size() > m.position) undo_last();
        open_marks_.pop_back();
        update_space();
    }

    std::size_t journal_size() const { return journal_.size(); }
    std::size_t open_mark_count() const { return open_marks_.size(); }

    // ---- journaled mutations ----

    void unlink(edge_id e)
    {
        require(edges_[e].linked, "unlink of an absent edge");
        unlink_raw(e);
        push({op::unlink, e});
    }

    // Contract e = (u, v): drop every edge into v and every edge from v to u,
    // move v's other out-edges to u as one fragment appended to u's out-list,
    // and kill v.
    void contract(edge_id e)
    {
        require(edges_[e].linked, "contract of an absent edge");
        node_id u = edges_[e].tail;
        node_id v = edges_[e].head;
        require(live_[u] && live_[v] && u != v, "contract endpoints");
        for (edge_id f = nodes_[v].in_head; f != no_edge;) {
            edge_id nx = edges_[f].in_next;
            unlink(f);
            f = nx;
        }
        for (edge_id f = nodes_[v].out_head; f != no_edge;) {
            edge_id nx = edges_[f].out_next;
            if (edges_[f].head == u) unlink(f);
            f = nx;
        }
        record r{op::splice};
        r.u = u;
        r.v = v;
        r.first = nodes_[v].out_head;
        r.last = nodes_[v].out_tail;
        r.prev = nodes_[u].out_tail;
        if (r.first != no_edge) {
            std::uint64_t touched = 0;
            for (edge_id f = r.first; f != no_edge; f = edges_[f].out_next) {
                edges_[f].tail = u;
                ++touched;
            }
            charge(touched);
            if (r.prev != no_edge)
                edges_[r.prev].out_next = r.first;
            else
                nodes_[u].out_head = r.first;
            edges_[r.first].out_prev = r.prev;
            nodes_[u].out_tail = r.last;
            nodes_[v].out_head = nodes_[v].out_tail = no_edge;
        }
        push(r);
        live_[v] = 0;
        record k{op::kill};
        k.v = v;
        push(k);
    }

    // Renumber the nodes of `kept` (sorted, containing the root) to 1..k.
    // Every node outside `kept` must be dead with empty lists.
    void relabel(std::span<const node_id> kept)
    {
        require(!kept.empty(), "relabel needs nodes");
        std::vector<node_id> map(n_ + 1, no_node);
        node_id k = 0;
        for (node_id v : kept) {
            require(v >= 1 && v <= n_ && (k == 0 || v > kept[k - 1]), "kept must be sorted");
            map[v] = ++k;
        }
        require(map[root_] != no_node, "relabel drops the root");
        record r{op::relabel};
        r.u = n_;
        r.first = static_cast<edge_id>(pool_.size());
        for (node_id v = 1; v <= n_; ++v) {
            if (map[v] != no_node) continue;
            require(!live_[v] && nodes_[v].out_head == no_edge && nodes_[v].in_head == no_edge,
                    "relabel drops a node that still has edges");
            pool_.push_back(v);
        }
        r.last = static_cast<edge_id>(pool_.size());
        for (node_id i = 1; i <= k; ++i) {
            node_id old = kept[i - 1];
            nodes_[i] = nodes_[old];
            live_[i] = live_[old];
        }
        n_ = k;
        rewrite_endpoints(map);
        root_ = map[root_];
        charge(static_cast<std::uint64_t>(r.u));
        push(r);
    }

    // Replace parallel slots group[0..] (same tail and head) by one new slot
    // carrying a merged payload. Returns the new slot.
    edge_id merge(std::span<const edge_id> group, payload_arena& arena, int depth)
    {
        require(group.size() >= 2, "merge needs two slots");
        std::vector<payload_id> kids;
        kids.reserve(group.size());
        node_id u = edges_[group[0]].tail, v = edges_[group[0]].head;
        for (edge_id e : group) {
            require(edges_[e].linked && edges_[e].tail == u && edges_[e].head == v, "merge of non-parallel slots");
            kids.push_back(edges_[e].payload);
        }
        payload_id p = arena.add_merged(kids, depth);
        arena_ = &arena;
        edge_id s = static_cast<edge_id>(edges_.size());
        edges_.push_back(edge_record{u, v, p});
        link_before(s, group[0]);
        push({op::add_slot, s});
        for (edge_id e : group) unlink(e);
        return s;
    }

    // Structural fingerprint: per node, the out- and in-lists with endpoints
    // and payloads. Equal fingerprints mean byte-equal adjacency.
    std::vector<std::int64_t> fingerprint() const
    {
        std::vector<std::int64_t> fp{n_, root_, linked_edges_};
        for (node_id v = 1; v <= n_; ++v) {
            fp.push_back(-1 - live_[v]);
            for (edge_id e = nodes_[v].out_head; e; e = edges_[e].out_next) {
                fp.push_back(e);
                fp.push_back(edges_[e].tail);
                fp.push_back(edges_[e].head);
                fp.push_back(edges_[e].payload);
            }
            fp.push_back(-7);
            for (edge_id e = nodes_[v].in_head; e; e = edges_[e].in_next) fp.push_back(e);
            fp.push_back(-9);
        }
        return fp;
    }

    // Re-attach the space charge to the meter active now.
    void rebind_meter() { space_ = space_charge(footprint()); }

    std::int64_t footprint() const
    {
        return static_cast<std::int64_t>(nodes_.size() + edges_.size() + journal_.size() + pool_.size());
    }

private:
    enum class op : std::uint8_t { unlink, splice, kill, relabel, add_slot };
    struct record {
        op kind;
        edge_id e = no_edge;
        node_id u = no_node, v = no_node;
        edge_id first = no_edge, last = no_edge, prev = no_edge;
    };
    struct node_lists {
        edge_id out_head = no_edge, out_tail = no_edge;
        edge_id in_head = no_edge, in_tail = no_edge;
    };

    void push(const record& r)
    {
        journal_.push_back(r);
        charge(1);
        update_space();
    }

    void update_space() { space_.set(footprint()); }

    void link_back(edge_id e)
    {
        edge_record& r = edges_[e];
        node_lists& a = nodes_[r.tail];
        node_lists& b = nodes_[r.head];
        r.out_prev = a.out_tail;
        r.out_next = no_edge;
        if (a.out_tail) edges_[a.out_tail].out_next = e; else a.out_head = e;
        a.out_tail = e;
        r.in_prev = b.in_tail;
        r.in_next = no_edge;
        if (b.in_tail) edges_[b.in_tail].in_next = e; else b.in_head = e;
        b.in_tail = e;
        r.linked = true;
        ++linked_edges_;
    }

    void link_before(edge_id s, edge_id at)
    {
        edge_record& r = edges_[s];
        edge_record& x = edges_[at];
        r.out_prev = x.out_prev;
        r.out_next = at;
        if (x.out_prev) edges_[x.out_prev].out_next = s; else nodes_[r.tail].out_head = s;
        x.out_prev = s;
        r.in_prev = x.in_prev;
        r.in_next = at;
        if (x.in_prev) edges_[x.in_prev].in_next = s; else nodes_[r.head].in_head = s;
        x.in_prev = s;
        r.linked = true;
        ++linked_edges_;
        charge(1);
    }

    void unlink_raw(edge_id e)
    {
        edge_record& r = edges_[e];
        if (r.out_prev) edges_[r.out_prev].out_next = r.out_next; else nodes_[r.tail].out_head = r.out_next;
        if (r.out_next) edges_[r.out_next].out_prev = r.out_prev; else nodes_[r.tail].out_tail = r.out_prev;
        if (r.in_prev) edges_[r.in_prev].in_next = r.in_next; else nodes_[r.head].in_head = r.in_next;
        if (r.in_next) edges_[r.in_next].in_prev = r.in_prev; else nodes_[r.head].in_tail = r.in_prev;
        r.linked = false;
        --linked_edges_;
    }

    // Inverse of unlink_raw; valid because rollback is LIFO, so the stored
    // neighbours are exactly the neighbours at unlink time.
    void relink_raw(edge_id e)
    {
        edge_record& r = edges_[e];
        if (r.out_prev) edges_[r.out_prev].out_next = e; else nodes_[r.tail].out_head = e;
        if (r.out_next) edges_[r.out_next].out_prev = e; else nodes_[r.tail].out_tail = e;
        if (r.in_prev) edges_[r.in_prev].in_next = e; else nodes_[r.head].in_head = e;
        if (r.in_next) edges_[r.in_next].in_prev = e; else nodes_[r.head].in_tail = e;
        r.linked = true;
        ++linked_edges_;
    }

    void rewrite_endpoints(const std::vector<node_id>& map)
    {
        std::uint64_t touched = 0;
        for (node_id v = 1; v <= n_; ++v) {
            for (edge_id e = nodes_[v].out_head; e; e = edges_[e].out_next) {
                edges_[e].tail = v;
                edges_[e].head = map[edges_[e].head];
                ++touched;
            }
        }
        charge(touched);
    }

    void undo_last()
    {
        record r = journal_.back();
        journal_.pop_back();
        charge(1);
        switch (r.kind) {
        case op::unlink:
            relink_raw(r.e);
            break;
        case op::kill:
            live_[r.v] = 1;
            break;
        case op::splice:
            if (r.first != no_edge) {
                std::uint64_t touched = 0;
                for (edge_id f = r.first; f != no_edge; f = edges_[f].out_next) {
                    edges_[f].tail = r.v;
                    ++touched;
                }
                charge(touched);
                if (r.prev != no_edge)
                    edges_[r.prev].out_next = no_edge;
                else
                    nodes_[r.u].out_head = no_edge;
                nodes_[r.u].out_tail = r.prev;
                edges_[r.first].out_prev = no_edge;
                nodes_[r.v].out_head = r.first;
                nodes_[r.v].out_tail = r.last;
            }
            break;
        case op::add_slot: {
            unlink_raw(r.e);
            require(r.e == static_cast<edge_id>(edges_.size()) - 1, "slot released out of order");
            arena_->pop_merged(edges_[r.e].payload);
            edges_.pop_back();
            break;
        }
        case op::relabel: {
            node_id old_n = r.u;
            node_id k = n_;
            std::vector<node_id> kept;
            kept.reserve(k);
            edge_id c = r.first;
            for (node_id v = 1; v <= old_n; ++v) {
                if (c < r.last && pool_[c] == v) {
                    ++c;
                    continue;
                }
                kept.push_back(v);
            }
            require(static_cast<node_id>(kept.size()) == k, "relabel journal corrupt");
            for (node_id i = k; i >= 1; --i) {
                node_id old = kept[i - 1];
                nodes_[old] = nodes_[i];
                live_[old] = live_[i];
            }
            for (edge_id j = r.first; j < r.last; ++j) {
                nodes_[pool_[j]] = node_lists{};
                live_[pool_[j]] = 0;
            }
            std::vector<node_id> map(k + 1, no_node);
            for (node_id i = 1; i <= k; ++i) map[i] = kept[i - 1];
            root_ = map[root_];
            n_ = old_n;
            std::uint64_t touched = 0;
            for (node_id v = 1; v <= n_; ++v) {
                for (edge_id e = nodes_[v].out_head; e; e = edges_[e].out_next) {
                    edges_[e].tail = v;
                    edges_[e].head = map[edges_[e].head];
                    ++touched;
                }
            }
            charge(touched + static_cast<std::uint64_t>(old_n));
            pool_.resize(r.first);
            break;
        }
        }
    }

    node_id n_ = 0;
    node_id root_ = no_node;
    std::vector<node_lists> nodes_;
    std::vector<std::uint8_t> live_;
    std::vector<edge_record> edges_;
    std::int64_t linked_edges_ = 0;
    std::vector<record> journal_;
    std::vector<node_id> pool_;
    std::vector<std::size_t> open_marks_;
    payload_arena* arena_ = nullptr;
    space_charge space_;
};

// Rolls back to a mark when the scope ends, also during unwinding, so an
// early stop leaves every graph in its state at the mark.
class journal_scope {
public:
    explicit journal_scope(rooted_digraph& g) : g_(g), m_(g.mark()) {}
    journal_scope(rooted_digraph& g, journal_mark m) : g_(g), m_(m) {}
    ~journal_scope() { g_.rollback(m_); }
    journal_scope(const journal_scope&) = delete;
    journal_scope& operator=(const journal_scope&) = delete;

private:
    rooted_digraph& g_;
    journal_mark m_;
};

} // namespace arbo
