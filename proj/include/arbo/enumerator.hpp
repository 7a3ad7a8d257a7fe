#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arbo/batch_trim.hpp"
#include "arbo/chain_decomposition.hpp"
#include "arbo/delta.hpp"
#include "arbo/disjoint_pair.hpp"
#include "arbo/emulation.hpp"
#include "arbo/graph.hpp"
#include "arbo/instrument.hpp"
#include "arbo/trim_flatten.hpp"

namespace arbo {

struct enumerator_config {
    double c = 0.25;                      // fragment budget, times n(G)
    decomposition_thresholds thresholds;
    node_id thick_cutoff = 2;             // n(G) <= cutoff always takes the thick branch
    bool paranoid = false;                // extra consistency checks
};

struct instrumentation_report {
    std::uint64_t total_work = 0;
    std::uint64_t reports = 0;
    std::uint64_t max_delay = 0;
    std::uint64_t first_report_work = 0;
    std::int64_t peak_retained = 0;
    std::vector<std::uint64_t> per_depth;
    std::uint64_t thin_calls = 0;
    std::uint64_t thick_calls = 0;
    std::uint64_t singleton_fragments = 0;
    std::uint64_t batched_fragments = 0;
    bool stopped = false;  // the sink asked to stop
};

struct batch_fragment {
    int b = 0, e = 0;
    bool singleton = false;
};

// Partition of 1..n-1 (sizes[i-1] = |NT(G_i)|): singletons with size > c n,
// otherwise maximal runs whose sizes sum to at most c n.
inline std::vector<batch_fragment> plan_batches(const std::vector<std::size_t>& sizes, node_id n, double c)
{
    const double limit = c * n;
    const int last = static_cast<int>(sizes.size());
    std::vector<batch_fragment> out;
    for (int i = 1; i <= last;) {
        if (static_cast<double>(sizes[i - 1]) > limit) {
            out.push_back({i, i, true});
            ++i;
            continue;
        }
        int b = i;
        double sum = 0;
        while (i <= last && sum + static_cast<double>(sizes[i - 1]) <= limit) sum += static_cast<double>(sizes[i++ - 1]);
        out.push_back({b, i - 1, false});
    }
    charge(sizes.size());
    return out;
}

namespace detail {

// Pair, decomposition and emulator of one thin call; pinned in memory since
// the emulator points into the other two.
struct thin_state {
    arborescence_pair pair;
    thin_verdict verdict;
    std::unique_ptr<emulator> em;
    space_charge space;
};

class enumeration_run {
public:
    enumeration_run(payload_arena& arena, delta_sink& sink, const enumerator_config& cfg, instrumentation_report& rep)
        : arena_(arena), acc_(arena, sink), cfg_(cfg), rep_(rep)
    {
    }

    void trim_and_recurse(rooted_digraph& g)
    {
        trim_result tr = trim(g);
        journal_scope undo(g, tr.mark);
        for (payload_id p : tr.forced) acc_.add(p);
        recurse(g);
        for (auto it = tr.forced.rbegin(); it != tr.forced.rend(); ++it) acc_.remove(*it);
        require(acc_.empty(), "accumulator not empty after the run");
    }

private:
    struct entry_check {
        const delta_accumulator& acc;
        std::int64_t size;
        std::size_t pending;
        explicit entry_check(const delta_accumulator& a) : acc(a), size(a.current_size()), pending(a.pending_size()) {}
        void verify() const
        {
            require(acc.current_size() == size && acc.pending_size() == pending, "accumulator changed across a call");
        }
    };

    void recurse(rooted_digraph& g)
    {
        depth_scope depth;
        entry_check entry(acc_);
        const node_id n = g.node_count();
        if (n == 1) {
            acc_.report();
            return;
        }
        flatten_result fl = flatten(g, arena_, current_depth());
        journal_scope undo(g, fl.mark);
        if (n == 2) {
            node_id v = g.root() == 1 ? 2 : 1;
            for (edge_id e = g.in_first(v); e; e = g.in_next(e)) {
                acc_.add(g.payload(e));
                acc_.report();
                acc_.remove(g.payload(e));
            }
            entry.verify();
            return;
        }
        std::unique_ptr<thin_state> st = std::make_unique<thin_state>();
        st->pair = find_disjoint_pair(g);
        for (edge_id a : st->pair.a_edges) acc_.add(g.payload(a));
        acc_.report();
        for (edge_id a : st->pair.a_edges) acc_.remove(g.payload(a));
        bool thick = n <= cfg_.thick_cutoff;
        if (!thick) {
            st->verdict = classify_thin(g, st->pair, cfg_.thresholds);
            thick = st->verdict.thick;
        }
        if (thick) {
            st.reset();
            ++rep_.thick_calls;
            thick_branch(g);
        } else {
            ++rep_.thin_calls;
            finish_state(g, *st);
            thin_branch(g, st);
        }
        entry.verify();
    }

    int current_depth() const
    {
        meter* m = current_meter();
        return m ? m->depth : 0;
    }

    // For each i: G_i = contract a_1..a_{i-1}, remove a_i; A is recomputed
    // per i so nothing but the forced list is kept across the child call.
    void thick_branch(rooted_digraph& g)
    {
        const node_id n = g.node_count();
        for (int i = 1; i < n; ++i) {
            payload_id pa = 0;
            {
                journal_scope undo(g);
                {
                    arborescence_pair p = find_disjoint_pair(g);
                    for (int j = 1; j < i; ++j) g.contract(p.a_edges[j - 1]);
                    pa = g.payload(p.a_edges[i - 1]);
                    g.unlink(p.a_edges[i - 1]);
                }
                trim_and_recurse_child(g);
            }
            acc_.add(pa);
        }
        arborescence_pair p = find_disjoint_pair(g);
        for (edge_id a : p.a_edges) acc_.remove(g.payload(a));
    }

    void trim_and_recurse_child(rooted_digraph& g)
    {
        trim_result tr = trim(g);
        journal_scope undo(g, tr.mark);
        space_charge held(static_cast<std::int64_t>(tr.forced.size()));
        for (payload_id p : tr.forced) acc_.add(p);
        recurse(g);
        for (auto it = tr.forced.rbegin(); it != tr.forced.rend(); ++it) acc_.remove(*it);
    }

    void finish_state(const rooted_digraph& g, thin_state& st)
    {
        st.em = std::make_unique<emulator>(g, st.pair, st.verdict.decomposition);
        const auto& d = st.verdict.decomposition;
        st.space.set(static_cast<std::int64_t>(6 * (g.node_count() + 1) + st.pair.c_edges.size() +
                                               d.subchains.size()));
    }

    std::unique_ptr<thin_state> build_state(const rooted_digraph& g)
    {
        auto st = std::make_unique<thin_state>();
        st->pair = find_disjoint_pair(g);
        st->verdict = classify_thin(g, st->pair, cfg_.thresholds);
        require(!st->verdict.thick, "rebuilt state is no longer thin");
        finish_state(g, *st);
        return st;
    }

    // b_j with j >= i, i.e. still in S at step i
    static bool in_s(const rooted_digraph& g, const arborescence_pair& p, edge_id f, int i)
    {
        node_id v = g.head(f);
        return p.b_by_head[v] == f && p.a.pre[v] - 1 >= i;
    }

    void thin_branch(rooted_digraph& g, std::unique_ptr<thin_state>& st)
    {
        const node_id n = g.node_count();
        for (edge_id b : st->pair.b_edges) acc_.add(g.payload(b));
        std::vector<batch_fragment> plan;
        {
            std::vector<std::size_t> sizes(n - 1);
            for (int i = 1; i < n; ++i)
                sizes[i - 1] = i == 1 || st->em->is_interesting(i - 1) ? st->em->count(i) : sizes[i - 2];
            plan = plan_batches(sizes, n, cfg_.c);
        }
        space_charge held(static_cast<std::int64_t>(plan.size()));
        for (const batch_fragment& fr : plan) {
            if (fr.singleton) {
                ++rep_.singleton_fragments;
                singleton(g, st, fr.b);
            } else {
                ++rep_.batched_fragments;
                batch(g, *st, fr);
            }
        }
        for (edge_id a : st->pair.a_edges) acc_.remove(g.payload(a));
    }

    void batch(rooted_digraph& g, thin_state& st, const batch_fragment& fr)
    {
        const arborescence_pair& p = st.pair;
        std::vector<std::vector<edge_id>> nts(fr.e - fr.b + 1);
        std::int64_t total = 0;
        for (int i = fr.b; i <= fr.e; ++i) {
            if (i == fr.b || st.em->is_interesting(i - 1))
                nts[i - fr.b] = st.em->extract(i);
            else
                nts[i - fr.b] = nts[i - fr.b - 1];
            total += static_cast<std::int64_t>(nts[i - fr.b].size());
        }
        charge(static_cast<std::uint64_t>(total));
        space_charge held(total + static_cast<std::int64_t>(nts.size()));
        std::vector<trimmed_instance> inst = build_trims(g, p, fr.b, nts);
        space_charge held_maps(total + static_cast<std::int64_t>(nts.size()) + 2 * static_cast<std::int64_t>(inst.size()));
        std::vector<payload_id> out;
        for (int i = fr.b; i <= fr.e; ++i) {
            out.clear();
            for (edge_id f : nts[i - fr.b])
                if (in_s(g, p, f, i)) out.push_back(g.payload(f));
            for (payload_id x : out) acc_.remove(x);
            recurse(inst[i - fr.b].graph);
            for (payload_id x : out) acc_.add(x);
            acc_.add(g.payload(p.a_edges[i - 1]));
            acc_.remove(g.payload(p.b_edges[i - 1]));
        }
    }

    // |NT(G_i)| > c n: recurse on G_i built in place after dropping the
    // state, then rebuild the state from the restored graph.
    void singleton(rooted_digraph& g, std::unique_ptr<thin_state>& st, int i)
    {
        std::vector<edge_id> a_before, b_before;
        if (cfg_.paranoid) {
            a_before = st->pair.a_edges;
            b_before = st->pair.b_edges;
        }
        auto shared = [&](const thin_state& s) {
            std::vector<payload_id> out;
            for (edge_id f : s.em->extract(i))
                if (in_s(g, s.pair, f, i)) out.push_back(g.payload(f));
            return out;
        };
        for (payload_id x : shared(*st)) acc_.remove(x);
        payload_id pa = g.payload(st->pair.a_edges[i - 1]);
        payload_id pb = g.payload(st->pair.b_edges[i - 1]);
        {
            journal_scope undo(g);
            for (int j = 1; j < i; ++j) g.contract(st->pair.a_edges[j - 1]);
            g.unlink(st->pair.a_edges[i - 1]);
            st.reset();
            trim_result tr = trim(g);
            journal_scope undo_trim(g, tr.mark);
            if (cfg_.paranoid)
                for (payload_id f : tr.forced) require(acc_.holds(f), "forced edge of G_i outside S");
            recurse(g);
        }
        st = build_state(g);
        if (cfg_.paranoid)
            require(st->pair.a_edges == a_before && st->pair.b_edges == b_before, "rebuilt pair differs");
        for (payload_id x : shared(*st)) acc_.add(x);
        acc_.add(pa);
        acc_.remove(pb);
    }

    payload_arena& arena_;
    delta_accumulator acc_;
    const enumerator_config& cfg_;
    instrumentation_report& rep_;
};

inline bool reaches_all(const rooted_digraph& g)
{
    std::vector<std::uint8_t> seen(g.node_count() + 1, 0);
    std::vector<node_id> stack{g.root()};
    seen[g.root()] = 1;
    std::int64_t count = 1;
    while (!stack.empty()) {
        node_id u = stack.back();
        stack.pop_back();
        for (edge_id e = g.out_first(u); e; e = g.out_next(e)) {
            node_id v = g.head(e);
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == g.live_node_count();
}

// Activates the run's meter and charges the input graph to it; on exit the
// previous meter is restored and the graph re-attached to it.
class run_meter_scope {
public:
    run_meter_scope(meter& m, rooted_digraph& g) : scope_(std::in_place, m), g_(g) { g_.rebind_meter(); }
    ~run_meter_scope()
    {
        scope_.reset();
        g_.rebind_meter();
    }
    run_meter_scope(const run_meter_scope&) = delete;
    run_meter_scope& operator=(const run_meter_scope&) = delete;

private:
    std::optional<meter_scope> scope_;
    rooted_digraph& g_;
};

} // namespace detail

// Emits every arborescence of g rooted at g.root() exactly once as a delta
// stream. Payloads of g must be leaf ids. g is restored on return, also when
// the sink stops the run.
inline instrumentation_report enumerate(rooted_digraph& g, delta_sink& sink, const enumerator_config& cfg = {})
{
    if (!detail::reaches_all(g)) throw unreachable_error("no arborescence exists: some node is unreachable from the root");
    payload_id leaves = 0;
    g.for_each_edge([&](edge_id e) { leaves = std::max(leaves, g.payload(e)); });
    instrumentation_report rep;
    meter m;
    m.work_by_depth.assign(1, 0);
    {
        detail::run_meter_scope scope(m, g);
        payload_arena arena(leaves);
        detail::enumeration_run run(arena, sink, cfg, rep);
        try {
            run.trim_and_recurse(g);
        } catch (const stop_enumeration&) {
            rep.stopped = true;
        }
    }
    rep.total_work = m.work;
    rep.reports = m.reports;
    rep.max_delay = m.max_delay;
    rep.first_report_work = m.first_report_work;
    rep.peak_retained = m.peak_space;
    rep.per_depth = m.work_by_depth;
    return rep;
}

} // namespace arbo
