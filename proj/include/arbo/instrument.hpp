#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace arbo {

// Abstract cost counters for one enumeration run. Work counts edges touched,
// events emitted, union/find operations and sort keys. Space counts the
// elements of structures currently alive.
struct meter {
    std::uint64_t work = 0;
    std::uint64_t reports = 0;
    std::uint64_t first_report_work = 0;
    std::uint64_t last_report_work = 0;
    std::uint64_t max_delay = 0;
    std::int64_t space = 0;
    std::int64_t peak_space = 0;
    std::vector<std::uint64_t> work_by_depth;
    int depth = 0;

    void on_report()
    {
        if (reports == 0)
            first_report_work = work;
        else
            max_delay = std::max(max_delay, work - last_report_work);
        last_report_work = work;
        ++reports;
    }
};

namespace detail {
inline thread_local meter* active_meter = nullptr;
}

inline meter* current_meter() { return detail::active_meter; }

inline void charge(std::uint64_t units)
{
    if (meter* m = detail::active_meter) {
        m->work += units;
        if (m->depth < static_cast<int>(m->work_by_depth.size()))
            m->work_by_depth[m->depth] += units;
    }
}

// Makes a meter active for the lifetime of the scope.
class meter_scope {
public:
    explicit meter_scope(meter& m) : prev_(detail::active_meter) { detail::active_meter = &m; }
    ~meter_scope() { detail::active_meter = prev_; }
    meter_scope(const meter_scope&) = delete;
    meter_scope& operator=(const meter_scope&) = delete;

private:
    meter* prev_;
};

// RAII space charge; the amount can be resized while alive.
class space_charge {
public:
    space_charge() : m_(detail::active_meter) {}
    explicit space_charge(std::int64_t units) : m_(detail::active_meter) { set(units); }
    ~space_charge() { set(0); }
    space_charge(const space_charge& o) : m_(o.m_) { set(o.units_); }
    space_charge& operator=(const space_charge& o)
    {
        if (this != &o) {
            set(0);
            m_ = o.m_;
            set(o.units_);
        }
        return *this;
    }
    space_charge(space_charge&& o) noexcept : m_(o.m_), units_(o.units_) { o.units_ = 0; }
    space_charge& operator=(space_charge&& o) noexcept
    {
        if (this != &o) {
            set(0);
            m_ = o.m_;
            units_ = o.units_;
            o.units_ = 0;
        }
        return *this;
    }

    void set(std::int64_t units)
    {
        if (m_) {
            m_->space += units - units_;
            m_->peak_space = std::max(m_->peak_space, m_->space);
        }
        units_ = units;
    }
    std::int64_t units() const { return units_; }

private:
    meter* m_;
    std::int64_t units_ = 0;
};

class depth_scope {
public:
    depth_scope()
    {
        if (meter* m = detail::active_meter) {
            ++m->depth;
            if (m->depth >= static_cast<int>(m->work_by_depth.size()))
                m->work_by_depth.resize(m->depth + 1, 0);
        }
    }
    ~depth_scope()
    {
        if (meter* m = detail::active_meter) --m->depth;
    }
    depth_scope(const depth_scope&) = delete;
    depth_scope& operator=(const depth_scope&) = delete;
};

} // namespace arbo
