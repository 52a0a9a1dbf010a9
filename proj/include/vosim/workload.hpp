#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vosim {

// Immutable job description. Durations are service seconds on the required
// CPUs; submit times are seconds from simulation start.
struct JobSpec {
    std::string job_id;
    std::string vo_id;
    std::string group_id;
    std::string workload_id;
    std::int64_t submit_time_s = 0;
    std::int64_t duration_s = 1;
    int cpus_required = 1;

    bool operator==(const JobSpec&) const = default;
};

// One burst-structured stream of jobs for a VO: job_count jobs partitioned
// evenly across the burst offsets, Poisson durations, Gaussian gaps.
struct WorkloadSpec {
    std::string vo_id;
    std::string workload_id;
    int job_count = 1;
    std::int64_t mean_duration_s = 1;
    double mean_interarrival_s = 10.0;
    double interarrival_stddev_s = 2.5;
    std::vector<std::int64_t> burst_offsets_s;  // non-decreasing, default 4 per stream
};

// Synchronized: every VO uses the burst offsets as-is. Unsynchronized: each
// VO's whole schedule shifts by a deterministic offset in [0, max_offset_s)
// derived from (offset_seed, vo).
struct SyncMode {
    bool synchronized_start = true;
    std::uint64_t offset_seed = 0;
    std::int64_t max_offset_s = 900;

    static SyncMode synchronized_mode() { return {true, 0, 0}; }
    static SyncMode unsynchronized(std::uint64_t seed, std::int64_t max_offset_s) {
        return {false, seed, max_offset_s};
    }
};

std::int64_t vo_start_offset(const SyncMode& sync, const std::string& vo_id);

// Deterministic for a fixed (spec, sync, seed, swap). Durations are Poisson
// draws with the spec mean (zero draws redrawn); inter-arrival gaps are
// Gaussian truncated at zero. swap_distributions exchanges the two roles.
// Output is sorted by submit time (generation order breaks ties).
std::vector<JobSpec> generate_workload(const WorkloadSpec& spec, const SyncMode& sync,
                                       std::uint64_t seed, bool swap_distributions = false);

struct WorkloadTableRow {
    int vo = 0;
    int workload = 0;
    int jobs = 1;
    std::int64_t mean_duration_s = 1;
};

// The reference grid-wide mix: two workloads for each of the first two VOs.
std::vector<WorkloadTableRow> default_workload_table();

struct Grid3Options {
    double scale = 1.0;
    int vo_count = 6;
    double mean_interarrival_s = 10.0;
    double interarrival_stddev_s = 2.5;  // mean / 4
    std::vector<std::int64_t> burst_offsets_s = {0, 900, 1800, 2700};
    bool swap_distributions = false;
    std::vector<WorkloadTableRow> table = default_workload_table();
};

// Expands the table cyclically over vo_count VOs (VO2 reuses VO0's rows,
// VO3 reuses VO1's, ...) and scales job counts to max(1, round(scale * n)).
std::vector<WorkloadSpec> grid3_workload_specs(const Grid3Options& options);

// Generates every stream and merges them into one submit-ordered sequence.
std::vector<JobSpec> build_grid3_workloads(const Grid3Options& options, const SyncMode& sync,
                                           std::uint64_t seed);

class WorkloadIoError : public std::runtime_error {
public:
    WorkloadIoError(const std::string& message, std::size_t line);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// CSV with header job_id,vo,group,workload,submit_s,duration_s,cpus.
// Integer seconds, UTF-8, LF line endings.
std::string workload_to_csv(const std::vector<JobSpec>& jobs);
std::vector<JobSpec> workload_from_csv(const std::string& text);
void write_workload(const std::vector<JobSpec>& jobs, const std::string& path);
std::vector<JobSpec> read_workload(const std::string& path);

}  // namespace vosim
