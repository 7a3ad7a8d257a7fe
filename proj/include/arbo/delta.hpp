#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "arbo/instrument.hpp"
#include "arbo/payload.hpp"
#include "arbo/types.hpp"

namespace arbo {

enum class delta_kind : std::uint8_t { add, remove, report };

struct delta_event {
    delta_kind kind;
    edge_id id = no_edge;  // leaf id; unused for report

    friend bool operator==(const delta_event&, const delta_event&) = default;
};

// Consumer of the delta stream. Ids are always original (leaf) edge ids.
class delta_sink {
public:
    virtual ~delta_sink() = default;
    virtual void add(edge_id leaf) = 0;
    virtual void remove(edge_id leaf) = 0;
    virtual void report() = 0;
};

// Thrown by a sink to stop the enumeration early.
struct stop_enumeration {};

class recording_sink final : public delta_sink {
public:
    std::vector<delta_event> events;
    void add(edge_id leaf) override { events.push_back({delta_kind::add, leaf}); }
    void remove(edge_id leaf) override { events.push_back({delta_kind::remove, leaf}); }
    void report() override { events.push_back({delta_kind::report, no_edge}); }
};

class counting_sink final : public delta_sink {
public:
    std::uint64_t reports = 0;
    std::uint64_t events = 0;
    void add(edge_id) override { ++events; }
    void remove(edge_id) override { ++events; }
    void report() override
    {
        ++events;
        ++reports;
    }
};

// "A <id>", "R <id>", "T" lines.
class text_delta_sink final : public delta_sink {
public:
    explicit text_delta_sink(std::ostream& out) : out_(out) {}
    void add(edge_id leaf) override { out_ << "A " << leaf << '\n'; }
    void remove(edge_id leaf) override { out_ << "R " << leaf << '\n'; }
    void report() override { out_ << "T\n"; }

private:
    std::ostream& out_;
};

// Expands each report to "F id id ..." with ids ascending.
class full_text_sink final : public delta_sink {
public:
    full_text_sink(std::ostream& out, edge_id leaf_count) : out_(out), in_(leaf_count + 1, 0) {}
    void add(edge_id leaf) override { in_[leaf] = 1; }
    void remove(edge_id leaf) override { in_[leaf] = 0; }
    void report() override
    {
        out_ << 'F';
        for (std::size_t e = 1; e < in_.size(); ++e)
            if (in_[e]) out_ << ' ' << e;
        out_ << '\n';
    }

private:
    std::ostream& out_;
    std::vector<std::uint8_t> in_;
};

// Stops the run after `limit` reports.
class limit_sink final : public delta_sink {
public:
    limit_sink(delta_sink& inner, std::uint64_t limit) : inner_(inner), limit_(limit) {}
    void add(edge_id leaf) override { inner_.add(leaf); }
    void remove(edge_id leaf) override { inner_.remove(leaf); }
    void report() override
    {
        inner_.report();
        if (++seen_ >= limit_) throw stop_enumeration{};
    }

private:
    delta_sink& inner_;
    std::uint64_t limit_;
    std::uint64_t seen_ = 0;
};

inline void write_events(std::ostream& out, const std::vector<delta_event>& events)
{
    for (const delta_event& ev : events) {
        switch (ev.kind) {
        case delta_kind::add: out << "A " << ev.id << '\n'; break;
        case delta_kind::remove: out << "R " << ev.id << '\n'; break;
        case delta_kind::report: out << "T\n"; break;
        }
    }
}

// The current arborescence under construction: leaf edges in `current`,
// merged edges awaiting a choice in `pending`. Reporting expands every
// combination of pending choices.
class delta_accumulator {
public:
    delta_accumulator(const payload_arena& arena, delta_sink& sink)
        : arena_(arena), sink_(sink), in_current_(arena.leaf_count() + 1, 0), space_(arena.leaf_count())
    {
    }

    void add(payload_id p)
    {
        charge(1);
        if (arena_.is_leaf(p)) {
            if (in_current_[p]) throw invariant_error("ADD of an edge already present");
            in_current_[p] = 1;
            ++current_size_;
            sink_.add(p);
            return;
        }
        if (p >= static_cast<payload_id>(pending_pos_.size())) pending_pos_.resize(p + 1, -1);
        if (pending_pos_[p] >= 0) throw invariant_error("ADD of a merged edge already pending");
        pending_pos_[p] = static_cast<int>(pending_.size());
        pending_.push_back(p);
        space_.set(static_cast<std::int64_t>(in_current_.size() + pending_.size()));
    }

    void remove(payload_id p)
    {
        charge(1);
        if (arena_.is_leaf(p)) {
            if (!in_current_[p]) throw invariant_error("REMOVE of an absent edge");
            in_current_[p] = 0;
            --current_size_;
            sink_.remove(p);
            return;
        }
        if (p >= static_cast<payload_id>(pending_pos_.size()) || pending_pos_[p] < 0)
            throw invariant_error("REMOVE of a merged edge that is not pending");
        int at = pending_pos_[p];
        payload_id last = pending_.back();
        pending_[at] = last;
        pending_pos_[last] = at;
        pending_.pop_back();
        pending_pos_[p] = -1;
    }

    // One report per combination of leaves of the pending merged edges.
    void report() { choose(0); }

    bool contains(payload_id leaf) const { return in_current_[leaf] != 0; }
    // Leaf in the current set, or merged edge pending.
    bool holds(payload_id p) const
    {
        if (arena_.is_leaf(p)) return in_current_[p] != 0;
        return p < static_cast<payload_id>(pending_pos_.size()) && pending_pos_[p] >= 0;
    }
    std::int64_t current_size() const { return current_size_; }
    std::size_t pending_size() const { return pending_.size(); }
    bool empty() const { return current_size_ == 0 && pending_.empty(); }

private:
    void choose(std::size_t k)
    {
        if (k == pending_.size()) {
            charge(1);
            if (meter* m = current_meter()) m->on_report();
            sink_.report();
            return;
        }
        payload_id e = pending_[k];
        arena_.for_each_leaf(e, [&](payload_id leaf) {
            add(leaf);
            choose(k + 1);
            remove(leaf);
        });
    }

    const payload_arena& arena_;
    delta_sink& sink_;
    std::vector<std::uint8_t> in_current_;
    std::int64_t current_size_ = 0;
    std::vector<payload_id> pending_;
    std::vector<int> pending_pos_;
    space_charge space_;
};

} // namespace arbo
