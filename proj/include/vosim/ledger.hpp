#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vosim {

// Per-(site, VO) time series of CPUs in use, answering sliding-window
// average queries (the EA/BA inputs of the commitment rule).
//
// A sample recorded at tick t covers the time cell [t*step, (t+1)*step).
// Ticks with no sample count as zero usage, so history before the first
// record reads as an idle site. Sums are kept in integer CPU-seconds and
// divided once, which keeps constant signals exact.
class UsageLedger {
public:
    UsageLedger(std::int64_t tick_step_s, std::int64_t retention_s);

    // Registers the capacity bound enforced by record(). Optional: pairs at
    // unregistered sites skip the capacity check.
    void register_site(const std::string& site_id, int cpu_count);

    // tick must be strictly greater than the last recorded tick for the
    // pair; cpus must be within the registered capacity. Samples whose cell
    // ends at or before tick*step - retention are evicted.
    void record(const std::string& site_id, const std::string& vo_id, int cpus, std::int64_t tick);

    // CPU-seconds recorded in [now*step - window, now*step).
    std::int64_t window_cpu_seconds(const std::string& site_id, const std::string& vo_id,
                                    std::int64_t window_s, std::int64_t now_tick) const;

    // Mean utilization over the window as a fraction of site_cpus; in [0, 1].
    double window_average(const std::string& site_id, const std::string& vo_id,
                          std::int64_t window_s, std::int64_t now_tick, int site_cpus) const;

    std::int64_t tick_step_s() const { return tick_step_s_; }
    std::int64_t retention_s() const { return retention_s_; }

private:
    struct Series {
        std::vector<std::int64_t> ticks;  // strictly increasing
        std::vector<int> cpus;
        std::vector<std::int64_t> prefix;  // prefix[i] = sum of cpus[0..i), in CPU-ticks
        std::size_t begin = 0;             // logical front after evictions

        std::size_t size() const { return ticks.size(); }
        void compact();
    };

    std::int64_t tick_step_s_;
    std::int64_t retention_s_;
    std::map<std::pair<std::string, std::string>, Series> series_;
    std::map<std::string, int> capacity_;
};

}  // namespace vosim
