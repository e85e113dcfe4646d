// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "hqec/defer.hpp"
#include "hqec/generators.hpp"
#include "hqec/oracle.hpp"
#include "hqec/qasm.hpp"

namespace hqec::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kCorpus = HQEC_CORPUS_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) {
    return (kCorpus / name).string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("hqec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    [[nodiscard]] std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

TEST(ExitCodes, TotalAndInjective) {
    std::set<int> seen;
    for (auto k : {VerdictKind::Equivalent, VerdictKind::NotEquivalent, VerdictKind::Inconclusive, VerdictKind::Error}) {
        seen.insert(exit_code(k));
    }
    EXPECT_EQ(seen, (std::set<int>{0, 1, 2, 3}));
}

TEST_F(Cli, CheckGoldenPairs) {
    auto r = cli({"check", corpus("teleport.qasm"), corpus("id1.qasm")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("class: Mix"), std::string::npos);
    r = cli({"check", corpus("cswap1.qasm"), corpus("cswap2.qasm"), "--no-shortcut"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("class: DisFree"), std::string::npos);
    r = cli({"check", corpus("rz.qasm"), corpus("crz.qasm")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("witness: input"), std::string::npos);
}

TEST_F(Cli, MutantPairsNeverExitZero) {
    for (const auto& e : fs::directory_iterator(kCorpus / "mutants")) {
        if (e.path().extension() != ".qasm") {
            continue;
        }
        std::string base = e.path().filename().string();
        base = base.substr(0, base.find(".mut")) + ".qasm";
        auto r = cli({"check", corpus(base), e.path().string()});
        EXPECT_TRUE(r.code == 1 || r.code == 2) << e.path() << "\n" << r.out;
    }
}

TEST_F(Cli, CheckErrorsAndJson) {
    std::ofstream(tmp("bad.qasm")) << "OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n";
    auto r = cli({"check", tmp("bad.qasm"), corpus("id1.qasm"), "--json", tmp("r.json")});
    EXPECT_EQ(r.code, 3);
    r = cli({"check", corpus("teleport.qasm"), corpus("id1.qasm"), "--json", tmp("r.json")});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(slurp(tmp("r.json")));
    EXPECT_EQ(j["schema"], 1);
    ASSERT_EQ(j["records"].size(), 2u);
    EXPECT_EQ(j["records"][0]["verdict"], "error");
    EXPECT_EQ(j["records"][1]["verdict"], "equivalent");
    EXPECT_EQ(j["records"][1]["class"], "Mix");
    EXPECT_EQ(j["totals"]["equivalent"], 1);
    EXPECT_EQ(j["totals"]["error"], 1);
    EXPECT_EQ(cli({"check", corpus("id1.qasm"), corpus("bell.qasm")}).code, 3);  // arity mismatch
}

TEST_F(Cli, ExplainPrintsPathSums) {
    auto r = cli({"check", corpus("teleport.qasm"), corpus("id1.qasm"), "--explain", "--no-shortcut"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Σ"), std::string::npos);
}

TEST_F(Cli, DeferWritesDeferredForm) {
    auto r = cli({"defer", corpus("teleport.qasm"), "-o", tmp("d.qasm")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("e_meas: 4 -> 0"), std::string::npos) << r.out;
    auto d = load_qasm(tmp("d.qasm")).circuit;
    EXPECT_EQ(d, load_qasm(corpus("teleport_dm.qasm")).circuit);
    EXPECT_TRUE(fs::exists(tmp("d.sidecar.json")));
    // IUM input is a fixpoint
    EXPECT_EQ(cli({"defer", tmp("d.qasm"), "-o", tmp("d2.qasm")}).code, 0);
    EXPECT_EQ(slurp(tmp("d.qasm")), slurp(tmp("d2.qasm")));
    EXPECT_EQ(cli({"defer", tmp("missing.qasm"), "-o", tmp("x.qasm")}).code, 3);
}

TEST_F(Cli, Classify) {
    auto r = cli({"classify", corpus("teleport2.qasm"), corpus("teleport.qasm")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "Dis\n");
    EXPECT_EQ(cli({"classify", corpus("qcec_c1.qasm"), corpus("qcec_c2.qasm")}).out, "DisFree\n");
}

TEST_F(Cli, MutateIsDeterministicAndConfirmed) {
    auto r = cli({"mutate", corpus("teleport.qasm"), "--seed", "1", "--count", "3", "-o", tmp("a")});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(cli({"mutate", corpus("teleport.qasm"), "--seed", "1", "--count", "3", "-o", tmp("b")}).code, 0);
    auto original = load_qasm(corpus("teleport.qasm")).circuit;
    for (int i = 0; i < 3; ++i) {
        const std::string f = "teleport.mut" + std::to_string(i) + ".qasm";
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f));
        auto m = load_qasm(dir_ / "a" / f).circuit;
        EXPECT_GT(oracle::channel_distance(oracle::simulate_channel(original), oracle::simulate_channel(m)), 1e-6);
    }
}

TEST_F(Cli, Teleportify) {
    auto r = cli({"teleportify", corpus("id1.qasm"), "--wires", "0", "--dynamic", "-o", tmp("t.qasm")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(load_qasm(tmp("t.qasm")).circuit, teleportify({1, 0, {}, {}}, {0}, true));
    save_qasm(tmp("two.qasm"), HybridCircuit{2, 0, {Apply{Gate::h(), {}, {0}}, Apply{Gate::x(), {0}, {1}}}, {}});
    ASSERT_EQ(cli({"teleportify", tmp("two.qasm"), "--wires", "all", "-o", tmp("two_t.qasm")}).code, 0);
    r = cli({"check", tmp("two.qasm"), tmp("two_t.qasm"), "--no-shortcut"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(cli({"teleportify", tmp("two.qasm"), "--wires", "5", "-o", tmp("x.qasm")}).code, 3);
    EXPECT_EQ(cli({"teleportify", tmp("two.qasm"), "--wires", "0,x", "-o", tmp("x.qasm")}).code, 3);
}

TEST_F(Cli, BenchCorpusMeetsExpectations) {
    auto r = cli({"bench", kCorpus.string(), "--manifest", corpus("manifest.json"), "-o", tmp("rep.json"), "--jobs", "4",
                  "--no-shortcut"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(slurp(tmp("rep.json")));
    const auto& t = j["totals"];
    std::size_t sum = t["equivalent"].get<std::size_t>() + t["not_equivalent"].get<std::size_t>() +
                      t["inconclusive"].get<std::size_t>() + t["error"].get<std::size_t>() +
                      t["timeout"].get<std::size_t>();
    EXPECT_EQ(sum, j["records"].size());
    EXPECT_GE(j["records"].size(), 30u);
}

TEST_F(Cli, BenchIsByteDeterministic) {
    auto args = [&](const std::string& out, const std::string& jobs) {
        return std::vector<std::string>{"bench", kCorpus.string(), "--manifest", corpus("manifest.json"),
                                        "-o",    tmp(out),          "--jobs",     jobs, "--no-timing"};
    };
    ASSERT_EQ(cli(args("a.json", "1")).code, 0);
    ASSERT_EQ(cli(args("b.json", "1")).code, 0);
    ASSERT_EQ(cli(args("c.json", "4")).code, 0);
    EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("b.json")));
    EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("c.json")));
}

TEST_F(Cli, BenchManifestEdgeCases) {
    std::ofstream(tmp("empty.json")) << R"({"challenges": []})";
    auto r = cli({"bench", kCorpus.string(), "--manifest", tmp("empty.json"), "-o", tmp("rep.json")});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(slurp(tmp("rep.json")));
    EXPECT_TRUE(j["records"].empty());

    std::ofstream(tmp("wrong.json"))
        << R"({"challenges": [{"name": "cswap-wrong", "a": "cswap1.qasm", "b": "cswap2.qasm", "expect": "not_equivalent"},
                              {"name": "cswap-right", "a": "cswap1.qasm", "b": "cswap2.qasm", "expect": "equivalent"}]})";
    r = cli({"bench", kCorpus.string(), "--manifest", tmp("wrong.json"), "-o", tmp("rep.json")});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("cswap-wrong"), std::string::npos);
    EXPECT_EQ(r.err.find("cswap-right"), std::string::npos);

    std::ofstream(tmp("broken.json")) << R"({"challenges": [{"name": "x"}]})";
    EXPECT_EQ(cli({"bench", kCorpus.string(), "--manifest", tmp("broken.json"), "-o", tmp("rep.json")}).code, 3);
    std::ofstream(tmp("badexp.json"))
        << R"({"challenges": [{"name": "x", "a": "id1.qasm", "b": "id1.qasm", "expect": "maybe"}]})";
    EXPECT_EQ(cli({"bench", kCorpus.string(), "--manifest", tmp("badexp.json"), "-o", tmp("rep.json")}).code, 3);
}

TEST(Usage, BadArgumentsAreErrors) {
    EXPECT_EQ(cli({}).code, 3);
    EXPECT_EQ(cli({"frobnicate"}).code, 3);
    EXPECT_EQ(cli({"check", "only-one"}).code, 3);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

}  // namespace
}  // namespace hqec::cli
