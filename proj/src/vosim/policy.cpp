#include "vosim/policy.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <format>
#include <fstream>
#include <sstream>

namespace vosim {

namespace {

struct UnitDef {
    const char* name;
    std::int64_t seconds;
};

// Largest first, so the formatter can pick the biggest exact unit.
constexpr std::array<UnitDef, 6> kUnits = {{
    {"month", 2592000},  // 30 days
    {"week", 604800},
    {"day", 86400},
    {"hour", 3600},
    {"minute", 60},
    {"second", 1},
}};

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Cursor over a single statement. Columns are 1-based for error reporting.
class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    std::size_t column() const { return pos_ + 1; }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c, const char* what) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::format("expected '{}' ({})", c, what));
        ++pos_;
    }

    std::string ident(const char* what) {
        skip_ws();
        const std::size_t start = pos_;
        auto ok = [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
        };
        while (pos_ < text_.size() && ok(text_[pos_]))
            ++pos_;
        if (pos_ == start)
            fail(std::format("expected {}", what));
        return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t integer(const char* what) {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail(std::format("expected {}", what));
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_)
            fail_at(start, std::format("{} out of range", what));
        return value;
    }

    std::string letters(const char* what) {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail(std::format("expected {}", what));
        return std::string(text_.substr(start, pos_ - start));
    }

    double number(const char* what) {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail(std::format("expected {}", what));
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            const std::size_t frac = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == frac)
                fail_at(start, std::format("malformed {}", what));
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_)
            fail_at(start, std::format("malformed {}", what));
        return value;
    }

    [[noreturn]] void fail(const std::string& message) { fail_at(pos_, message); }

    [[noreturn]] void fail_at(std::size_t pos, const std::string& message) {
        throw StatementParseError(message, pos + 1);
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

std::int64_t unit_seconds(const std::string& word, Cursor& cur, std::size_t column) {
    const std::string low = lowercase(word);
    for (const auto& u : kUnits) {
        if (low == u.name)
            return u.seconds;
        // plural form
        if (low.size() == std::string_view(u.name).size() + 1 && low.back() == 's' &&
            low.compare(0, low.size() - 1, u.name) == 0)
            return u.seconds;
    }
    cur.fail_at(column - 1, std::format("unknown duration unit '{}'", word));
}

LimitTuple parse_tuple(Cursor& cur, const char* which) {
    LimitTuple out;
    cur.expect('(', which);
    const std::size_t int_col = (cur.skip_ws(), cur.column());
    const std::int64_t count = cur.integer("duration");
    if (count <= 0)
        cur.fail_at(int_col - 1, "duration must be positive");
    const std::size_t unit_col = (cur.skip_ws(), cur.column());
    const std::string unit = cur.letters("duration unit");
    out.interval_s = count * unit_seconds(unit, cur, unit_col);
    cur.expect(',', which);
    const std::size_t pct_col = (cur.skip_ws(), cur.column());
    const double percent = cur.number("percentage");
    cur.expect('%', "percentage sign");
    if (percent < 0.0 || percent > 100.0)
        cur.fail_at(pct_col - 1, "fraction outside [0, 100]%");
    out.fraction = percent / 100.0;
    cur.expect(')', which);
    return out;
}

}  // namespace

StatementParseError::StatementParseError(const std::string& message, std::size_t column)
    : std::runtime_error(std::format("column {}: {}", column, message)),
      message_(message),
      column_(column) {}

PolicyFileError::PolicyFileError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::format("line {}, column {}: {}", line, column, message)),
      line_(line),
      column_(column) {}

std::string to_token(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::NoLimit: return "no-limit";
        case PolicyKind::FixedLimit: return "fixed";
        case PolicyKind::ExtensibleLimit: return "extensible";
        case PolicyKind::CommitmentLimit: return "commitment";
    }
    return "no-limit";
}

PolicyKind policy_kind_from_token(const std::string& token) {
    if (token == "no-limit") return PolicyKind::NoLimit;
    if (token == "fixed") return PolicyKind::FixedLimit;
    if (token == "extensible") return PolicyKind::ExtensibleLimit;
    if (token == "commitment") return PolicyKind::CommitmentLimit;
    throw std::invalid_argument("unknown policy kind '" + token +
                                "' (expected no-limit|fixed|extensible|commitment)");
}

UsagePolicyStatement parse_statement(const std::string& text) {
    Cursor cur(text);
    UsagePolicyStatement stmt;

    cur.expect('[', "statement start");
    const std::size_t kind_col = (cur.skip_ws(), cur.column());
    const std::string kind = cur.ident("resource kind");
    if (lowercase(kind) != "cpu")
        cur.fail_at(kind_col - 1, std::format("unknown resource kind '{}'", kind));
    stmt.resource_kind = ResourceKind::Cpu;

    cur.expect(',', "after resource kind");
    stmt.site_id = cur.ident("site identifier");
    cur.expect(',', "after site");
    stmt.vo_id = cur.ident("VO identifier");
    cur.expect(',', "after VO");

    stmt.epoch = parse_tuple(cur, "epoch tuple");
    cur.expect(',', "between tuples");
    const std::size_t burst_col = (cur.skip_ws(), cur.column());
    stmt.burst = parse_tuple(cur, "burst tuple");
    cur.expect(']', "statement end");
    if (!cur.at_end())
        cur.fail("trailing characters after statement");

    if (stmt.burst.interval_s > stmt.epoch.interval_s)
        cur.fail_at(burst_col - 1, "burst interval exceeds epoch interval");
    return stmt;
}

namespace {

std::string format_duration(std::int64_t seconds) {
    for (const auto& u : kUnits) {
        if (seconds % u.seconds == 0) {
            const std::int64_t n = seconds / u.seconds;
            return std::format("{}{}{}", n, u.name, n == 1 ? "" : "s");
        }
    }
    return std::format("{}seconds", seconds);  // unreachable: second divides everything
}

std::string format_percent(double fraction) {
    const double percent = fraction * 100.0;
    auto round_trips = [&](const std::string& s) {
        double parsed = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
        return ec == std::errc() && ptr == s.data() + s.size() && parsed / 100.0 == fraction;
    };
    std::string candidate = std::format("{}", percent);
    if (round_trips(candidate))
        return candidate;
    for (int precision : {15, 16, 17}) {
        candidate = std::format("{:.{}g}", percent, precision);
        if (round_trips(candidate))
            return candidate;
    }
    return std::format("{}", percent);
}

}  // namespace

std::string format_statement(const UsagePolicyStatement& stmt) {
    return std::format("[CPU, {}, {}, ({}, {}%), ({}, {}%)]",
                       stmt.site_id, stmt.vo_id,
                       format_duration(stmt.epoch.interval_s), format_percent(stmt.epoch.fraction),
                       format_duration(stmt.burst.interval_s), format_percent(stmt.burst.fraction));
}

std::vector<UsagePolicyStatement> parse_policy_text(const std::string& text) {
    std::vector<UsagePolicyStatement> out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (blank)
            continue;
        try {
            out.push_back(parse_statement(line));
        } catch (const StatementParseError& e) {
            throw PolicyFileError(e.message(), line_no, e.column());
        }
    }
    return out;
}

std::vector<UsagePolicyStatement> load_policy_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open policy file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_policy_text(buf.str());
}

std::string OversubscriptionWarning::text() const {
    return std::format("site {}: {} shares sum to {:.6g} (> 1){}",
                       site_id, burst ? "burst" : "epoch", share_sum,
                       burst ? " [informational]" : "");
}

std::vector<OversubscriptionWarning> check_oversubscription(
    const std::vector<UsagePolicyStatement>& statements,
    const std::vector<SiteSpec>& sites) {
    std::vector<OversubscriptionWarning> out;
    for (const auto& site : sites) {
        double epoch_sum = 0.0;
        double burst_sum = 0.0;
        for (const auto& stmt : statements) {
            if (stmt.site_id != site.site_id)
                continue;
            epoch_sum += stmt.epoch.fraction;
            burst_sum += stmt.burst.fraction;
        }
        if (epoch_sum > 1.0 + kShareEpsilon)
            out.push_back({site.site_id, false, epoch_sum});
        if (burst_sum > 1.0 + kShareEpsilon)
            out.push_back({site.site_id, true, burst_sum});
    }
    return out;
}

}  // namespace vosim
