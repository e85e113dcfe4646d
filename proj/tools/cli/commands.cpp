// SPDX-License-Identifier: Apache-2.0

#include "cli/commands.hpp"

#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hqec/defer.hpp"
#include "hqec/errors.hpp"
#include "hqec/generators.hpp"
#include "hqec/mutate.hpp"
#include "hqec/qasm.hpp"

namespace hqec::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) {
        throw Error("cannot write " + p.string());
    }
}

HybridCircuit load(const std::filesystem::path& p, std::ostream& err) {
    auto prog = load_qasm(p);
    for (const auto& w : prog.warnings) {
        err << p.string() << ": warning: " << w << "\n";
    }
    return prog.circuit;
}

void print_result(const CheckResult& r, std::ostream& out) {
    out << "verdict: " << to_string(r.verdict.kind) << "\n";
    out << "class: " << to_string(r.cls) << "\n";
    if (r.verdict.reason != StallReason::None) {
        out << "reason: " << to_string(r.verdict.reason) << "\n";
    }
    if (r.verdict.witness) {
        out << "witness: input " << r.verdict.witness->input << " (" << r.verdict.witness->observable << ")\n";
    }
    if (!r.verdict.message.empty()) {
        out << "message: " << r.verdict.message << "\n";
    }
    out << "wall_ms: " << r.metrics.wall_ms << "  path_var_peak: " << r.metrics.path_var_peak
        << "  rule_firings: " << r.metrics.rule_firings << "\n";
}

void append_record(const std::filesystem::path& path, const Record& rec) {
    Report rep;
    if (std::filesystem::exists(path)) {
        rep = report_from_json(json::parse(read_file(path)));
    }
    rep.records.push_back(rec);
    write_file(path, to_json(rep).dump(2) + "\n");
}

std::vector<WireId> parse_wires(const std::string& list, std::uint32_t n) {
    std::vector<WireId> out;
    if (list == "all") {
        for (WireId w = 0; w < n; ++w) {
            out.push_back(w);
        }
        return out;
    }
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw Error("bad wire '" + item + "' in selection");
        }
        out.push_back(static_cast<WireId>(v));
    }
    return out;
}

std::vector<std::string> expectations(const json& e) {
    std::vector<std::string> out = e.is_array() ? e.get<std::vector<std::string>>()
                                                : std::vector<std::string>{e.get<std::string>()};
    for (const auto& s : out) {
        if (!verdict_from_string(s)) {
            throw Error("unknown expected verdict '" + s + "'");
        }
    }
    return out;
}

}  // namespace

BenchOutcome run_bench(const std::filesystem::path& dir, const std::filesystem::path& manifest,
                       const BenchOptions& opt) {
    struct Challenge {
        std::string name, a, b;
        std::vector<std::string> expect;
        std::optional<std::string> cls;
    };
    std::vector<Challenge> challenges;
    try {
        json m = json::parse(read_file(manifest));
        for (const auto& c : m.at("challenges")) {
            Challenge ch{c.at("name").get<std::string>(), c.at("a").get<std::string>(), c.at("b").get<std::string>(),
                         {}, std::nullopt};
            if (c.contains("expect")) {
                ch.expect = expectations(c.at("expect"));
            }
            if (c.contains("class")) {
                ch.cls = c.at("class").get<std::string>();
                if (!class_from_string(*ch.cls)) {
                    throw Error("unknown class '" + *ch.cls + "' in challenge '" + ch.name + "'");
                }
            }
            challenges.push_back(std::move(ch));
        }
    } catch (const json::exception& e) {
        throw Error("manifest " + manifest.string() + ": " + e.what());
    }

    BenchOutcome outcome;
    outcome.report.records.resize(challenges.size());
    CheckOptions co;
    co.timeout_s = opt.timeout_s;
    co.structural_shortcut = opt.structural_shortcut;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < challenges.size();) {
            const auto& ch = challenges[i];
            Record rec;
            try {
                auto a = load_qasm(dir / ch.a).circuit;
                auto b = load_qasm(dir / ch.b).circuit;
                rec = record_of(ch.name, check_hybrid(a, b, co), opt.timing);
            } catch (const std::exception& e) {
                rec.name = ch.name;
                rec.verdict = VerdictKind::Error;
                rec.message = e.what();
            }
            rec.expected = ch.expect;
            rec.expected_class = ch.cls;
            if (!ch.expect.empty() || ch.cls) {
                bool ok = ch.expect.empty() || std::find(ch.expect.begin(), ch.expect.end(),
                                                         to_string(rec.verdict)) != ch.expect.end();
                ok = ok && (!ch.cls || (rec.cls && *ch.cls == to_string(*rec.cls)));
                rec.matched = ok;
            }
            outcome.report.records[i] = std::move(rec);
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, challenges.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& r : outcome.report.records) {
        if (r.matched == false) {
            outcome.mismatches.push_back(r.name);
        }
    }
    return outcome;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hybrid quantum circuit equivalence checker", "hqec"};
    app.require_subcommand(1);

    std::string in1, in2, json_out, output, wires = "all", dir, manifest;
    double timeout = 600;
    bool explain = false, no_shortcut = false, dynamic = false, no_timing = false;
    std::uint64_t seed = 1;
    std::size_t count = 1, jobs = 1;

    auto* check = app.add_subcommand("check", "Check two circuits for equivalence");
    check->add_option("A", in1)->required();
    check->add_option("B", in2)->required();
    check->add_option("--timeout", timeout, "Seconds before giving up");
    check->add_option("--json", json_out, "Append a report record to this file");
    check->add_flag("--explain", explain, "Print intermediate path sums");
    check->add_flag("--no-shortcut", no_shortcut, "Always run the rewrite engine");

    auto* defer = app.add_subcommand("defer", "Apply the deferred-measurement transformation");
    defer->add_option("IN", in1)->required();
    defer->add_option("-o,--output", output)->required();

    auto* classify_cmd = app.add_subcommand("classify", "Print the challenge class of a pair");
    classify_cmd->add_option("A", in1)->required();
    classify_cmd->add_option("B", in2)->required();

    auto* mutate = app.add_subcommand("mutate", "Write confirmed non-equivalent mutants");
    mutate->add_option("IN", in1)->required();
    mutate->add_option("--seed", seed);
    mutate->add_option("--count", count);
    mutate->add_option("-o,--output", output, "Output directory")->required();

    auto* tele = app.add_subcommand("teleportify", "Thread wires through teleportation");
    tele->add_option("IN", in1)->required();
    tele->add_option("--wires", wires, "Comma-separated wire indices or 'all'");
    tele->add_flag("--dynamic", dynamic, "Measure and correct classically");
    tele->add_option("-o,--output", output)->required();

    auto* bench = app.add_subcommand("bench", "Run a manifest of challenge pairs");
    bench->add_option("DIR", dir)->required();
    bench->add_option("--manifest", manifest)->required();
    bench->add_option("-o,--output", output, "Report file")->required();
    bench->add_option("--jobs", jobs);
    bench->add_option("--timeout", timeout);
    bench->add_flag("--no-timing", no_timing, "Write zero wall times for byte-stable reports");
    bench->add_flag("--no-shortcut", no_shortcut);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    try {
        if (check->parsed()) {
            CheckOptions opt;
            opt.timeout_s = timeout;
            opt.explain = explain;
            opt.structural_shortcut = !no_shortcut;
            CheckResult r;
            try {
                r = check_hybrid(load(in1, err), load(in2, err), opt);
            } catch (const Error& e) {
                r.verdict = Verdict::error(e.what());
            }
            print_result(r, out);
            for (const auto& line : r.explanation) {
                out << line << "\n";
            }
            if (!json_out.empty()) {
                Record rec = record_of(in1 + " vs " + in2, r, true);
                if (r.verdict.kind == VerdictKind::Error && r.metrics.wall_ms == 0 && r.explanation.empty()) {
                    rec.cls.reset();
                }
                append_record(json_out, rec);
            }
            return exit_code(r.verdict.kind);
        }
        if (defer->parsed()) {
            auto c = load(in1, err);
            auto d = deferred_measurement(c);
            save_qasm(output, d);
            out << "l_init: " << l_init(c) << " -> " << l_init(d) << "\n";
            out << "e_meas: " << e_meas(c) << " -> " << e_meas(d) << "\n";
            return 0;
        }
        if (classify_cmd->parsed()) {
            out << to_string(classify(load(in1, err), load(in2, err))) << "\n";
            return 0;
        }
        if (mutate->parsed()) {
            auto c = load(in1, err);
            auto ms = generate_mutants(c, seed, count);
            std::filesystem::create_directories(output);
            const std::string stem = std::filesystem::path(in1).stem().string();
            for (std::size_t i = 0; i < ms.size(); ++i) {
                auto path = std::filesystem::path(output) / (stem + ".mut" + std::to_string(i) + ".qasm");
                save_qasm(path, ms[i].circuit);
                out << path.string() << ": " << ms[i].op.str();
                if (ms[i].distance >= 0) {
                    out << " (distance " << ms[i].distance << ")";
                } else {
                    out << " (checker confirmed)";
                }
                out << "\n";
            }
            return 0;
        }
        if (tele->parsed()) {
            auto c = load(in1, err);
            auto t = teleportify(c, parse_wires(wires, c.n_qubits), dynamic);
            save_qasm(output, t);
            out << "class against input: " << to_string(classify(c, t)) << "\n";
            return 0;
        }
        if (bench->parsed()) {
            BenchOptions opt;
            opt.jobs = jobs;
            opt.timeout_s = timeout;
            opt.timing = !no_timing;
            opt.structural_shortcut = !no_shortcut;
            auto o = run_bench(dir, manifest, opt);
            write_file(output, to_json(o.report).dump(2) + "\n");
            const Totals t = o.report.totals();
            out << o.report.records.size() << " challenges: " << t.equivalent << " equivalent, " << t.not_equivalent
                << " not equivalent, " << t.inconclusive << " inconclusive, " << t.timeout << " timeout, " << t.error
                << " error\n";
            for (const auto& name : o.mismatches) {
                err << "mismatch: " << name << "\n";
            }
            return o.mismatches.empty() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

}  // namespace hqec::cli
