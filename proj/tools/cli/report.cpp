// SPDX-License-Identifier: Apache-2.0

#include "cli/report.hpp"

#include "hqec/errors.hpp"

namespace hqec::cli {

using nlohmann::json;

Totals Report::totals() const {
    Totals t;
    for (const auto& r : records) {
        if (r.timed_out()) {
            ++t.timeout;
            continue;
        }
        switch (r.verdict) {
        case VerdictKind::Equivalent:
            ++t.equivalent;
            break;
        case VerdictKind::NotEquivalent:
            ++t.not_equivalent;
            break;
        case VerdictKind::Inconclusive:
            ++t.inconclusive;
            break;
        case VerdictKind::Error:
            ++t.error;
            break;
        }
    }
    return t;
}

Record record_of(const std::string& name, const CheckResult& r, bool timing) {
    Record rec;
    rec.name = name;
    rec.cls = r.cls;
    rec.verdict = r.verdict.kind;
    rec.reason = r.verdict.reason;
    rec.witness = r.verdict.witness;
    rec.message = r.verdict.message;
    rec.wall_ms = timing ? r.metrics.wall_ms : 0;
    rec.path_var_peak = r.metrics.path_var_peak;
    rec.rule_firings = r.metrics.rule_firings;
    return rec;
}

int exit_code(VerdictKind k) {
    switch (k) {
    case VerdictKind::Equivalent:
        return 0;
    case VerdictKind::NotEquivalent:
        return 1;
    case VerdictKind::Inconclusive:
        return 2;
    case VerdictKind::Error:
        return 3;
    }
    return 3;
}

std::optional<VerdictKind> verdict_from_string(const std::string& s) {
    for (auto k : {VerdictKind::Equivalent, VerdictKind::NotEquivalent, VerdictKind::Inconclusive, VerdictKind::Error}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<ChallengeClass> class_from_string(const std::string& s) {
    for (auto k : {ChallengeClass::DisFree, ChallengeClass::Mix, ChallengeClass::Dis}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

std::optional<StallReason> reason_from_string(const std::string& s) {
    for (auto k : {StallReason::None, StallReason::ReductionStalled, StallReason::SeparationFailed,
                   StallReason::ResidualNotPure, StallReason::BlockMismatch, StallReason::MeasuredOutputs,
                   StallReason::Timeout}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

}  // namespace

json to_json(const Record& r) {
    json j;
    j["name"] = r.name;
    j["class"] = r.cls ? json(to_string(*r.cls)) : json(nullptr);
    j["verdict"] = to_string(r.verdict);
    if (r.reason != StallReason::None) {
        j["reason"] = to_string(r.reason);
    }
    if (r.witness) {
        j["witness"] = {{"input", r.witness->input}, {"observable", r.witness->observable}};
    }
    if (!r.message.empty()) {
        j["message"] = r.message;
    }
    j["wall_ms"] = r.wall_ms;
    j["path_var_peak"] = r.path_var_peak;
    j["rule_firings"] = r.rule_firings;
    if (!r.expected.empty()) {
        j["expected"] = r.expected;
    }
    if (r.expected_class) {
        j["expected_class"] = *r.expected_class;
    }
    if (r.matched) {
        j["matched"] = *r.matched;
    }
    return j;
}

json to_json(const Report& r) {
    json records = json::array();
    for (const auto& rec : r.records) {
        records.push_back(to_json(rec));
    }
    Totals t = r.totals();
    return {{"schema", kReportSchema},
            {"records", records},
            {"totals",
             {{"equivalent", t.equivalent},
              {"not_equivalent", t.not_equivalent},
              {"inconclusive", t.inconclusive},
              {"error", t.error},
              {"timeout", t.timeout}}}};
}

Report report_from_json(const json& j) {
    try {
        if (j.at("schema").get<int>() != kReportSchema) {
            throw Error("unsupported report schema " + j.at("schema").dump());
        }
        Report rep;
        for (const auto& rj : j.at("records")) {
            Record r;
            r.name = rj.at("name").get<std::string>();
            if (!rj.at("class").is_null()) {
                r.cls = class_from_string(rj.at("class").get<std::string>());
            }
            auto v = verdict_from_string(rj.at("verdict").get<std::string>());
            if (!v) {
                throw Error("unknown verdict in report record '" + r.name + "'");
            }
            r.verdict = *v;
            if (rj.contains("reason")) {
                r.reason = reason_from_string(rj.at("reason").get<std::string>()).value_or(StallReason::None);
            }
            if (rj.contains("witness")) {
                r.witness = Witness{rj.at("witness").at("input").get<std::uint64_t>(),
                                    rj.at("witness").at("observable").get<std::string>()};
            }
            r.message = rj.value("message", "");
            r.wall_ms = rj.at("wall_ms").get<double>();
            r.path_var_peak = rj.at("path_var_peak").get<std::size_t>();
            r.rule_firings = rj.at("rule_firings").get<std::size_t>();
            if (rj.contains("expected")) {
                r.expected = rj.at("expected").get<std::vector<std::string>>();
            }
            if (rj.contains("expected_class")) {
                r.expected_class = rj.at("expected_class").get<std::string>();
            }
            if (rj.contains("matched")) {
                r.matched = rj.at("matched").get<bool>();
            }
            rep.records.push_back(std::move(r));
        }
        return rep;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
}

}  // namespace hqec::cli
