#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vosim/sites.hpp"

namespace vosim {

// Tolerance for share-fraction comparisons. Usage is accumulated in integer
// CPU-tick units and divided once, so exact 0 and exact 1 are representable;
// the epsilon only absorbs decimal-fraction noise (0.1 * cpus and friends).
inline constexpr double kShareEpsilon = 1e-9;

enum class ResourceKind { Cpu };

enum class PolicyKind { NoLimit, FixedLimit, ExtensibleLimit, CommitmentLimit };

// Tokens used in CLI flags, config files and CSV output.
std::string to_token(PolicyKind kind);
PolicyKind policy_kind_from_token(const std::string& token);  // throws std::invalid_argument

// One (interval, fraction) cap. fraction is relative to the site CPU pool.
struct LimitTuple {
    std::int64_t interval_s = 0;
    double fraction = 0.0;

    bool operator==(const LimitTuple&) const = default;
};

// A parsed bracket statement such as
//
//   [CPU, Site1, VO0, (1hour, 10%), (1minute, 40%)]
//
// binding a (site, VO) pair to an epoch cap and a burst cap. Fixed and
// extensible policies read only epoch.fraction; commitment reads all four
// fields. Invariants: both intervals positive, fractions in [0, 1], burst
// interval no longer than the epoch interval.
struct UsagePolicyStatement {
    ResourceKind resource_kind = ResourceKind::Cpu;
    std::string site_id;
    std::string vo_id;
    LimitTuple epoch;
    LimitTuple burst;

    bool operator==(const UsagePolicyStatement&) const = default;
};

// Parse failure for a single statement; column is 1-based into the text.
class StatementParseError : public std::runtime_error {
public:
    StatementParseError(const std::string& message, std::size_t column);

    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::string message_;
    std::size_t column_;
};

// Parse failure inside a policy file; line and column are 1-based.
class PolicyFileError : public std::runtime_error {
public:
    PolicyFileError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Grammar (whitespace-tolerant; unit names case-insensitive, plural 's' ok):
//   statement := '[' kind ',' ident ',' ident ',' tuple ',' tuple ']'
//   tuple     := '(' integer unit ',' number '%' ')'
//   unit      := second|minute|hour|day|week|month
// minute=60s, hour=3600s, day=86400s, week=7 days, month=30 days.
UsagePolicyStatement parse_statement(const std::string& text);

// Inverse of parse_statement: durations rendered in the largest exact unit,
// fractions as percentages. parse_statement(format_statement(s)) == s for
// any statement whose fractions are expressible as a percentage literal.
std::string format_statement(const UsagePolicyStatement& stmt);

// Policy file: UTF-8, one statement per line, '#' comments, blank lines
// ignored. Errors carry the offending line number.
std::vector<UsagePolicyStatement> parse_policy_text(const std::string& text);
std::vector<UsagePolicyStatement> load_policy_file(const std::string& path);

struct OversubscriptionWarning {
    std::string site_id;
    bool burst = false;  // false: epoch shares above 1 (real trouble); true: burst shares (informational)
    double share_sum = 0.0;

    std::string text() const;
};

// One warning per site whose epoch shares sum above 1 + eps, plus
// informational warnings where burst shares do.
std::vector<OversubscriptionWarning> check_oversubscription(
    const std::vector<UsagePolicyStatement>& statements,
    const std::vector<SiteSpec>& sites);

}  // namespace vosim
