#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vosim/ledger.hpp"
#include "vosim/policy.hpp"

namespace vosim {

enum class RejectReason {
    None,
    EpochExceeded,
    BurstExceeded,
    FixedLimitExceeded,
    NoCapacity,
    Fallthrough,
};

std::string to_token(RejectReason reason);

struct AdmissionDecision {
    enum class Kind { Run, Queue, Reject };

    Kind kind = Kind::Reject;
    RejectReason reason = RejectReason::Fallthrough;

    static AdmissionDecision run() { return {Kind::Run, RejectReason::None}; }
    static AdmissionDecision queue() { return {Kind::Queue, RejectReason::None}; }
    static AdmissionDecision reject(RejectReason r) { return {Kind::Reject, r}; }

    bool admitted() const { return kind != Kind::Reject; }
    bool operator==(const AdmissionDecision&) const = default;
};

std::string to_token(AdmissionDecision::Kind kind);

// The slice of site state the admission rules read. Committed CPUs count
// everything the site has already accepted from a VO: running jobs plus
// jobs staging toward or waiting at the site. Admission is checked once,
// at assignment time, and the site never re-checks when a queued job is
// promoted, so the instantaneous counters must include those in-flight
// claims or a burst of same-tick admissions could push a VO past its
// fixed share.
struct SiteLoad {
    int cpu_count = 1;
    double total_allocation = 1.0;
    int vo_committed = 0;     // committed CPUs of the requesting VO
    int total_committed = 0;  // committed CPUs across all VOs
};

// Inputs of the commitment-limit rule, all as fractions of the site pool.
struct CommitmentInputs {
    double epoch_avg = 0.0;         // EA: VO epoch-window utilization
    double burst_avg = 0.0;         // BA: VO burst-window utilization
    double burst_sum = 0.0;         // sum of BA over VOs with statements at the site
    double epoch_limit = 0.0;       // EP
    double burst_limit = 0.0;       // BP
    double total_allocation = 1.0;  // TOTAL
    double job_fraction = 0.0;      // j = J / site cpus
};

// Fixed-limit: run iff C + J <= R*cpus (within epsilon), else reject.
AdmissionDecision admit_fixed(double limit_fraction, const SiteLoad& load, int j_cpus);

// Extensible-limit: the fixed condition, or J fits in unused capacity.
AdmissionDecision admit_extensible(double limit_fraction, const SiteLoad& load, int j_cpus);

// Commitment-limit, cases evaluated strictly in order:
//   1. EA > EP                                -> reject (epoch exceeded)
//   2. sum(BA) = 0     and BA + j < BP        -> run
//   3. sum(BA) + j < TOTAL and BA + j < BP    -> run
//   4. sum(BA) = TOTAL and BA + j < EP        -> queue
//   otherwise                                 -> reject (fallthrough)
AdmissionDecision admit_commitment(const CommitmentInputs& in);

// Statements for one experiment, indexed by (site, VO). The policy kind is
// global to the run; VOs without a statement at a limited site have zero
// entitlement there and are rejected.
class PolicyTable {
public:
    PolicyTable() = default;
    PolicyTable(PolicyKind kind, std::vector<UsagePolicyStatement> statements);

    PolicyKind kind() const { return kind_; }
    const UsagePolicyStatement* find(const std::string& site_id, const std::string& vo_id) const;
    std::vector<const UsagePolicyStatement*> at_site(const std::string& site_id) const;
    const std::vector<UsagePolicyStatement>& statements() const { return statements_; }

private:
    PolicyKind kind_ = PolicyKind::NoLimit;
    std::vector<UsagePolicyStatement> statements_;
    std::map<std::pair<std::string, std::string>, std::size_t> by_pair_;
};

// Decision plus the state snapshot behind it, as logged in the audit trail.
struct AdmissionOutcome {
    AdmissionDecision decision;
    double epoch_avg = 0.0;  // populated for commitment
    double burst_avg = 0.0;
    int committed = 0;  // requesting VO's committed CPUs before this job
    int free = 0;       // cpu_count - total committed (may be negative)
};

// Full admission check for one job at one site. Pure with respect to the
// ledger and load; commitment averages are computed from the ledger at
// now_tick. A job wider than the whole site is rejected under every kind
// (it could never start and would wedge the FIFO queue).
AdmissionOutcome admit(const PolicyTable& policies, const UsageLedger& ledger,
                       const SiteSpec& site, const SiteLoad& load, const std::string& vo_id,
                       int j_cpus, std::int64_t now_tick);

}  // namespace vosim
