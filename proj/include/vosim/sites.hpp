#pragma once

#include <cstdint>
#include <string>

namespace vosim {

// A resource provider: a fixed CPU pool plus the local knobs the admission
// rules read. total_allocation is the TOTAL share of the pool the owner
// exposes to all VOs combined (commitment Case 3/4 bound).
struct SiteSpec {
    std::string site_id;
    int cpu_count = 1;
    std::int64_t staging_delay_s = 0;
    double total_allocation = 1.0;

    bool operator==(const SiteSpec&) const = default;
};

}  // namespace vosim
