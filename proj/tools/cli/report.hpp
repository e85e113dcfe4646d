// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hqec/equiv.hpp"
#include "json.hpp"

namespace hqec::cli {

inline constexpr int kReportSchema = 1;

struct Record {
    std::string name;
    std::optional<ChallengeClass> cls;  // absent when the inputs did not parse
    VerdictKind verdict = VerdictKind::Error;
    StallReason reason = StallReason::None;
    std::optional<Witness> witness;
    std::string message;
    double wall_ms = 0;
    std::size_t path_var_peak = 0;
    std::size_t rule_firings = 0;
    std::vector<std::string> expected;  // accepted verdicts; empty means unchecked
    std::optional<std::string> expected_class;
    std::optional<bool> matched;

    [[nodiscard]] bool timed_out() const {
        return verdict == VerdictKind::Inconclusive && reason == StallReason::Timeout;
    }
};

struct Totals {
    std::size_t equivalent = 0, not_equivalent = 0, inconclusive = 0, error = 0, timeout = 0;
    friend bool operator==(const Totals&, const Totals&) = default;
};

struct Report {
    std::vector<Record> records;
    /// Timeouts count under `timeout` only, so the totals partition the records.
    [[nodiscard]] Totals totals() const;
};

Record record_of(const std::string& name, const CheckResult& r, bool timing);

/// 0 Equivalent, 1 NotEquivalent, 2 Inconclusive or timeout, 3 Error.
int exit_code(VerdictKind k);

nlohmann::json to_json(const Record& r);
nlohmann::json to_json(const Report& r);
/// Throws Error on schema mismatch or malformed documents.
Report report_from_json(const nlohmann::json& j);

std::optional<VerdictKind> verdict_from_string(const std::string& s);
std::optional<ChallengeClass> class_from_string(const std::string& s);

}  // namespace hqec::cli
