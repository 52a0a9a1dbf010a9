#include "vosim/ledger.hpp"

#include <algorithm>
#include <format>
#include <stdexcept>

namespace vosim {

UsageLedger::UsageLedger(std::int64_t tick_step_s, std::int64_t retention_s)
    : tick_step_s_(tick_step_s), retention_s_(retention_s) {
    if (tick_step_s <= 0)
        throw std::invalid_argument("ledger tick step must be positive");
    if (retention_s < tick_step_s)
        throw std::invalid_argument("ledger retention must cover at least one tick");
}

void UsageLedger::register_site(const std::string& site_id, int cpu_count) {
    if (cpu_count < 1)
        throw std::invalid_argument("site capacity must be >= 1");
    capacity_[site_id] = cpu_count;
}

void UsageLedger::Series::compact() {
    if (begin < 4096 || begin * 2 < ticks.size())
        return;
    ticks.erase(ticks.begin(), ticks.begin() + static_cast<std::ptrdiff_t>(begin));
    cpus.erase(cpus.begin(), cpus.begin() + static_cast<std::ptrdiff_t>(begin));
    const std::int64_t base = prefix[begin];
    prefix.erase(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(begin));
    for (auto& p : prefix)
        p -= base;
    begin = 0;
}

void UsageLedger::record(const std::string& site_id, const std::string& vo_id, int cpus,
                         std::int64_t tick) {
    if (cpus < 0)
        throw std::invalid_argument("cpus in use cannot be negative");
    if (auto it = capacity_.find(site_id); it != capacity_.end() && cpus > it->second)
        throw std::invalid_argument(std::format("cpus {} exceed capacity {} at site {}",
                                                cpus, it->second, site_id));

    auto& series = series_[{site_id, vo_id}];
    if (series.prefix.empty())
        series.prefix.push_back(0);
    if (series.size() > series.begin && series.ticks.back() >= tick)
        throw std::invalid_argument(std::format(
            "non-monotone tick {} for ({}, {}): last recorded tick is {}",
            tick, site_id, vo_id, series.ticks.back()));

    series.ticks.push_back(tick);
    series.cpus.push_back(cpus);
    series.prefix.push_back(series.prefix.back() + cpus);

    // Evict cells that ended at or before now - retention.
    const std::int64_t cutoff = tick * tick_step_s_ - retention_s_;
    while (series.begin < series.size() &&
           (series.ticks[series.begin] + 1) * tick_step_s_ <= cutoff)
        ++series.begin;
    series.compact();
}

std::int64_t UsageLedger::window_cpu_seconds(const std::string& site_id, const std::string& vo_id,
                                             std::int64_t window_s, std::int64_t now_tick) const {
    if (window_s <= 0)
        throw std::invalid_argument("window must be positive");
    if (window_s > retention_s_)
        throw std::invalid_argument(std::format("window {}s exceeds retention {}s",
                                                window_s, retention_s_));

    const auto it = series_.find({site_id, vo_id});
    if (it == series_.end())
        return 0;
    const Series& s = it->second;

    const std::int64_t window_start = now_tick * tick_step_s_ - window_s;
    // Cell of tick t is [t*step, (t+1)*step); cells ending at or before the
    // window start contribute nothing.
    auto floor_div = [](std::int64_t a, std::int64_t b) {
        return a >= 0 ? a / b : -((-a + b - 1) / b);
    };
    const std::int64_t first_tick = floor_div(window_start, tick_step_s_);

    const auto tick_begin = s.ticks.begin() + static_cast<std::ptrdiff_t>(s.begin);
    const auto lo = std::lower_bound(tick_begin, s.ticks.end(), first_tick);
    const auto hi = std::lower_bound(lo, s.ticks.end(), now_tick);
    if (lo == hi)
        return 0;

    std::size_t lo_idx = static_cast<std::size_t>(lo - s.ticks.begin());
    const std::size_t hi_idx = static_cast<std::size_t>(hi - s.ticks.begin());

    std::int64_t total = 0;
    // The cell containing the window start may be clipped on the left.
    if (s.ticks[lo_idx] == first_tick && window_start % tick_step_s_ != 0) {
        const std::int64_t cell_end = (first_tick + 1) * tick_step_s_;
        total += static_cast<std::int64_t>(s.cpus[lo_idx]) * (cell_end - window_start);
        ++lo_idx;
    }
    total += (s.prefix[hi_idx] - s.prefix[lo_idx]) * tick_step_s_;
    return total;
}

double UsageLedger::window_average(const std::string& site_id, const std::string& vo_id,
                                   std::int64_t window_s, std::int64_t now_tick,
                                   int site_cpus) const {
    if (site_cpus < 1)
        throw std::invalid_argument("site_cpus must be >= 1");
    const std::int64_t cpu_seconds = window_cpu_seconds(site_id, vo_id, window_s, now_tick);
    return static_cast<double>(cpu_seconds) /
           (static_cast<double>(window_s) * static_cast<double>(site_cpus));
}

}  // namespace vosim
