#include "vosim/admission.hpp"

#include <cmath>
#include <stdexcept>

namespace vosim {

std::string to_token(RejectReason reason) {
    switch (reason) {
        case RejectReason::None: return "";
        case RejectReason::EpochExceeded: return "epoch-exceeded";
        case RejectReason::BurstExceeded: return "burst-exceeded";
        case RejectReason::FixedLimitExceeded: return "fixed-limit-exceeded";
        case RejectReason::NoCapacity: return "no-capacity";
        case RejectReason::Fallthrough: return "fallthrough";
    }
    return "";
}

std::string to_token(AdmissionDecision::Kind kind) {
    switch (kind) {
        case AdmissionDecision::Kind::Run: return "run";
        case AdmissionDecision::Kind::Queue: return "queue";
        case AdmissionDecision::Kind::Reject: return "reject";
    }
    return "reject";
}

AdmissionDecision admit_fixed(double limit_fraction, const SiteLoad& load, int j_cpus) {
    const double limit = limit_fraction * load.cpu_count;
    if (static_cast<double>(load.vo_committed) + j_cpus <= limit + kShareEpsilon)
        return AdmissionDecision::run();
    return AdmissionDecision::reject(RejectReason::FixedLimitExceeded);
}

AdmissionDecision admit_extensible(double limit_fraction, const SiteLoad& load, int j_cpus) {
    if (admit_fixed(limit_fraction, load, j_cpus).admitted())
        return AdmissionDecision::run();
    const int free = load.cpu_count - load.total_committed;
    if (j_cpus <= free)
        return AdmissionDecision::run();
    return AdmissionDecision::reject(RejectReason::NoCapacity);
}

AdmissionDecision admit_commitment(const CommitmentInputs& in) {
    // Case 1: over-used site.
    if (in.epoch_avg > in.epoch_limit + kShareEpsilon)
        return AdmissionDecision::reject(RejectReason::EpochExceeded);
    // Case 2: un-allocated site.
    if (in.burst_sum <= kShareEpsilon && in.burst_avg + in.job_fraction < in.burst_limit)
        return AdmissionDecision::run();
    // Case 3: sub-allocated site.
    if (in.burst_sum + in.job_fraction < in.total_allocation &&
        in.burst_avg + in.job_fraction < in.burst_limit)
        return AdmissionDecision::run();
    // Case 4: over-allocated site.
    if (std::abs(in.burst_sum - in.total_allocation) <= kShareEpsilon &&
        in.burst_avg + in.job_fraction < in.epoch_limit)
        return AdmissionDecision::queue();
    return AdmissionDecision::reject(RejectReason::Fallthrough);
}

PolicyTable::PolicyTable(PolicyKind kind, std::vector<UsagePolicyStatement> statements)
    : kind_(kind), statements_(std::move(statements)) {
    for (std::size_t i = 0; i < statements_.size(); ++i) {
        const auto key = std::make_pair(statements_[i].site_id, statements_[i].vo_id);
        if (!by_pair_.emplace(key, i).second)
            throw std::invalid_argument("duplicate policy statement for (" + key.first + ", " +
                                        key.second + ")");
    }
}

const UsagePolicyStatement* PolicyTable::find(const std::string& site_id,
                                              const std::string& vo_id) const {
    const auto it = by_pair_.find({site_id, vo_id});
    return it == by_pair_.end() ? nullptr : &statements_[it->second];
}

std::vector<const UsagePolicyStatement*> PolicyTable::at_site(const std::string& site_id) const {
    std::vector<const UsagePolicyStatement*> out;
    for (const auto& stmt : statements_)
        if (stmt.site_id == site_id)
            out.push_back(&stmt);
    return out;
}

AdmissionOutcome admit(const PolicyTable& policies, const UsageLedger& ledger,
                       const SiteSpec& site, const SiteLoad& load, const std::string& vo_id,
                       int j_cpus, std::int64_t now_tick) {
    if (j_cpus < 1)
        throw std::invalid_argument("job CPU request must be >= 1");

    AdmissionOutcome out;
    out.committed = load.vo_committed;
    out.free = load.cpu_count - load.total_committed;

    if (j_cpus > load.cpu_count) {
        out.decision = AdmissionDecision::reject(RejectReason::NoCapacity);
        return out;
    }
    if (policies.kind() == PolicyKind::NoLimit) {
        out.decision = AdmissionDecision::run();
        return out;
    }

    const UsagePolicyStatement* stmt = policies.find(site.site_id, vo_id);
    if (stmt == nullptr) {
        // Un-stated VOs hold zero share at a limited site.
        out.decision = AdmissionDecision::reject(RejectReason::Fallthrough);
        return out;
    }

    switch (policies.kind()) {
        case PolicyKind::FixedLimit:
            out.decision = admit_fixed(stmt->epoch.fraction, load, j_cpus);
            return out;
        case PolicyKind::ExtensibleLimit:
            out.decision = admit_extensible(stmt->epoch.fraction, load, j_cpus);
            return out;
        case PolicyKind::CommitmentLimit: {
            CommitmentInputs in;
            in.epoch_avg = ledger.window_average(site.site_id, vo_id, stmt->epoch.interval_s,
                                                 now_tick, site.cpu_count);
            in.burst_avg = ledger.window_average(site.site_id, vo_id, stmt->burst.interval_s,
                                                 now_tick, site.cpu_count);
            in.burst_sum = 0.0;
            for (const auto* other : policies.at_site(site.site_id))
                in.burst_sum += ledger.window_average(site.site_id, other->vo_id,
                                                      other->burst.interval_s, now_tick,
                                                      site.cpu_count);
            in.epoch_limit = stmt->epoch.fraction;
            in.burst_limit = stmt->burst.fraction;
            in.total_allocation = load.total_allocation;
            in.job_fraction = static_cast<double>(j_cpus) / site.cpu_count;
            out.epoch_avg = in.epoch_avg;
            out.burst_avg = in.burst_avg;
            out.decision = admit_commitment(in);
            return out;
        }
        case PolicyKind::NoLimit:
            break;
    }
    out.decision = AdmissionDecision::run();
    return out;
}

}  // namespace vosim
