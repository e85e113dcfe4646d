// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "hqec/defer.hpp"
#include "hqec/equiv.hpp"
#include "hqec/generators.hpp"
#include "hqec/mutate.hpp"
#include "hqec/oracle.hpp"
#include "hqec/qasm.hpp"
#include "support/random_circuit.hpp"

namespace hqec {
namespace {

namespace fs = std::filesystem;

const fs::path kCorpus = HQEC_CORPUS_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

HybridCircuit corpus(const std::string& name) {
    return load_qasm(kCorpus / name).circuit;
}

CheckOptions engine_only() {
    CheckOptions o;
    o.structural_shortcut = false;
    o.timeout_s = 30;
    return o;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// Deferred measurement on random hybrid circuits.
void ac1(Outcome& o) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1);
    std::size_t good = 0;
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        auto c = testing::random_circuit(rng);
        auto d = deferred_measurement(c);
        double dist = oracle::channel_distance(oracle::simulate_channel(c), oracle::simulate_channel(d));
        worst = std::max(worst, dist);
        good += l_init(d) == 0 && e_meas(d) == 0 && dist <= 1e-9;
    }
    const double t = seconds_since(t0);
    o.detail << good << "/200 circuits, worst distance " << worst << ", " << t << " s";
    o.require(good == 200, "every circuit");
    o.require(t < 60, "under 60 s");
}

// Teleportation against the identity, and its deferred form.
void ac2(Outcome& o) {
    const auto t0 = Clock::now();
    auto r = check_hybrid(corpus("teleport.qasm"), corpus("id1.qasm"));
    const double t = seconds_since(t0);
    auto engine = check_hybrid(corpus("teleport.qasm"), corpus("id1.qasm"), engine_only());
    bool golden = deferred_measurement(corpus("teleport.qasm")) == corpus("teleport_dm.qasm");
    o.detail << to_string(r.verdict.kind) << " " << to_string(r.cls) << " in " << t << " s; engine "
             << to_string(engine.verdict.kind) << "; deferred form " << (golden ? "matches" : "differs");
    o.require(r.verdict.kind == VerdictKind::Equivalent && r.cls == ChallengeClass::Mix, "verdict and class");
    o.require(engine.verdict.kind == VerdictKind::Equivalent, "rewrite engine alone");
    o.require(t < 1, "under 1 s");
    o.require(golden, "golden deferred form");
}

// Controlled-swap and minimal QCEC pairs.
void ac3(Outcome& o) {
    auto timed = [&](const std::string& a, const std::string& b) {
        const auto t0 = Clock::now();
        auto r = check_hybrid(corpus(a), corpus(b), engine_only());
        const double t = seconds_since(t0);
        o.detail << a << ": " << to_string(r.verdict.kind) << " " << to_string(r.cls) << " in " << t << " s; ";
        o.require(r.verdict.kind == VerdictKind::Equivalent && t < 1, a);
        return r;
    };
    timed("cswap1.qasm", "cswap2.qasm");
    auto q = timed("qcec_c1.qasm", "qcec_c2.qasm");
    o.require(q.cls == ChallengeClass::DisFree, "QCEC class DisFree");
}

std::vector<std::size_t> angle_sites(const HybridCircuit& c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (const auto* a = std::get_if<Apply>(&c.body[i]); a && !a->gate.angle.is_zero()) {
            out.push_back(i);
        }
    }
    return out;
}

// Oracle-confirmed mutants are never judged equivalent.
void ac4(Outcome& o) {
    struct Case {
        HybridCircuit original, mutant;
        std::string family;
    };
    std::vector<Case> cases;
    const std::vector<std::pair<std::string, std::size_t>> families{
        {"teleport.qasm", 14}, {"qft4.qasm", 14}, {"bell.qasm", 10}, {"ghz3.qasm", 10}};
    for (const auto& [name, count] : families) {
        auto c = corpus(name);
        for (auto& m : generate_mutants(c, 7, count)) {
            cases.push_back({c, std::move(m.circuit), name});
        }
    }
    // every rotation of QFT-4 and the T gate nudged by pi/2^27
    std::size_t small = 0;
    for (const std::string name : {"qft4.qasm", "tcirc.qasm", "teleport.qasm"}) {
        auto c = corpus(name);
        for (auto site : angle_sites(c)) {
            MutationOp op;
            op.kind = MutationKind::PerturbAngle;
            op.site = site;
            op.delta = DyadicAngle::canonical(1, 28);
            if (auto m = apply_mutation(c, op); m && confirm_mutant(c, *m)) {
                cases.push_back({c, *m, "pi/2^27"});
                ++small;
            }
        }
    }
    std::size_t equivalent = 0, caught = 0;
    for (const auto& k : cases) {
        auto v = check_hybrid(k.original, k.mutant, engine_only()).verdict.kind;
        equivalent += v == VerdictKind::Equivalent;
        caught += v == VerdictKind::NotEquivalent;
    }
    o.detail << cases.size() << " mutants (" << small << " at pi/2^27): " << equivalent << " equivalent, " << caught
             << " not equivalent";
    o.require(cases.size() >= 50, "at least 50 mutants");
    o.require(small > 0, "small-angle mutants present");
    o.require(equivalent == 0, "no equivalent verdict");

    // adding or removing a control on a rotation must be caught
    std::size_t flips = 0, flips_caught = 0;
    for (const std::string name : {"rz.qasm", "crz.qasm", "qft4.qasm", "tcirc.qasm"}) {
        auto c = corpus(name);
        for (auto site : angle_sites(c)) {
            for (WireId w = 0; w < c.n_qubits; ++w) {
                MutationOp op;
                op.kind = MutationKind::FlipControl;
                op.site = site;
                op.control = w;
                auto m = apply_mutation(c, op);
                if (!m || !confirm_mutant(c, *m)) {
                    continue;
                }
                ++flips;
                flips_caught += check_hybrid(c, *m, engine_only()).verdict.kind == VerdictKind::NotEquivalent;
            }
        }
    }
    bool pair = check_hybrid(corpus("rz.qasm"), corpus("crz.qasm"), engine_only()).verdict.kind ==
                VerdictKind::NotEquivalent;
    o.detail << "; control flips " << flips_caught << "/" << flips << " caught, rz/crz pair "
             << (pair ? "caught" : "missed");
    o.require(flips > 0 && flips_caught == flips && pair, "every control flip caught");
}

// Rewrite-rule firings preserve the dense operator.
void ac5(Outcome& o) {
    std::mt19937_64 rng(5);
    std::size_t checked = 0, bad = 0;
    double worst = 0;
    auto observer = [&](Rule, const PathSum& before, const PathSum& after) {
        if (before.n_in + before.path.size() > 8) {
            return;
        }
        ++checked;
        double d = (oracle::evaluate(before) - oracle::evaluate(after)).cwiseAbs().maxCoeff();
        worst = std::max(worst, d);
        bad += d > 1e-12;
    };
    for (int i = 0; checked < 1500 && i < 5000; ++i) {
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 4);
        auto u = testing::random_unitary(rng, n, 4 + rng() % 12, 4, 2, false);
        auto adj = adjoint_circuit(u);
        if (rng() % 2) {
            u.insert(u.end(), adj.begin(), adj.end());
        }
        of_unitary_circuit(u, n, {1, {observer, {}, nullptr}});
    }
    o.detail << checked << " firings on sums of at most 8 variables, worst deviation " << worst;
    o.require(checked >= 1000, "at least 1000 firings");
    o.require(bad == 0, "every firing within 1e-12");
}

// QFT miters and dynamic phase estimation at scale.
void ac6(Outcome& o) {
    double slowest = 0;
    std::size_t reduced = 0;
    for (std::uint32_t n = 1; n <= 20; ++n) {
        const auto t0 = Clock::now();
        auto u = qft(n);
        auto adj = adjoint_circuit(u);
        u.insert(u.end(), adj.begin(), adj.end());
        bool id = is_identity(of_unitary_circuit(u, n), false);
        const double t = seconds_since(t0);
        slowest = std::max(slowest, t);
        reduced += id && t < 5;
    }
    o.detail << "QFT miters reduced " << reduced << "/20, slowest " << slowest << " s";
    o.require(reduced == 20, "every QFT miter under 5 s");
    for (std::uint32_t n : {11u, 16u}) {
        const auto t0 = Clock::now();
        auto r = check_hybrid(qpe(n, true), qpe(n, false), engine_only());
        const double t = seconds_since(t0);
        o.detail << "; qpe " << n << ": " << to_string(r.verdict.kind) << " " << to_string(r.cls) << " in " << t
                 << " s";
        o.require(r.verdict.kind == VerdictKind::Equivalent && r.cls == ChallengeClass::DisFree && t < 10,
                  "qpe " + std::to_string(n));
    }
}

// Double teleportation against single teleportation.
void ac7(Outcome& o) {
    const HybridCircuit id1{1, 0, {}, {}};
    auto once = teleportify(id1, {0}, true);
    auto twice = teleportify(once, {2}, true);
    const auto t0 = Clock::now();
    auto r = check_hybrid(twice, once, engine_only());
    const double t = seconds_since(t0);
    bool oracle_agrees = oracle::oracle_equiv(twice, once);
    auto corpus_r = check_hybrid(corpus("teleport2.qasm"), corpus("teleport.qasm"), engine_only());
    o.detail << to_string(r.verdict.kind) << " " << to_string(r.cls) << " in " << t << " s; oracle "
             << (oracle_agrees ? "agrees" : "disagrees") << " at " << twice.n_qubits << " qubits; corpus pair "
             << to_string(corpus_r.verdict.kind);
    o.require(r.verdict.kind == VerdictKind::Equivalent && r.cls == ChallengeClass::Dis && t < 5, "verdict");
    o.require(oracle_agrees, "oracle");
    o.require(corpus_r.verdict.kind == VerdictKind::Equivalent, "corpus pair");
}

// Self-equivalence and invariance under consistent wire renaming.
void ac8(Outcome& o) {
    std::mt19937_64 rng(8);
    testing::RandomCircuitOptions opt;
    opt.max_qubits = 5;
    std::size_t self = 0, pairs = 0, invariant = 0;
    for (int i = 0; i < 100; ++i) {
        auto c = testing::random_circuit(rng, opt);
        std::vector<WireId> perm(c.n_qubits);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto pc = testing::permute_wires(c, perm);
        auto v = check_hybrid(c, c, engine_only()).verdict.kind;
        self += v == VerdictKind::Equivalent && check_hybrid(pc, pc, engine_only()).verdict.kind == v;

        std::optional<HybridCircuit> m;
        for (int tries = 0; !m && tries < 20; ++tries) {
            m = apply_mutation(c, random_mutation(rng, c, false));
        }
        if (m) {
            ++pairs;
            auto a = check_hybrid(c, *m, engine_only()).verdict.kind;
            auto b = check_hybrid(pc, testing::permute_wires(*m, perm), engine_only()).verdict.kind;
            invariant += a == b;
        }
    }
    o.detail << "self-equivalent " << self << "/100, permutation-invariant pairs " << invariant << "/" << pairs;
    o.require(self == 100, "self-equivalence");
    o.require(pairs >= 50 && invariant == pairs, "permutation invariance");
}

// QASM round trip and small-angle exactness.
void ac9(Outcome& o) {
    std::size_t files = 0, same = 0;
    for (const auto& e : fs::recursive_directory_iterator(kCorpus)) {
        if (e.path().extension() != ".qasm") {
            continue;
        }
        ++files;
        auto c = load_qasm(e.path()).circuit;
        auto text = emit_qasm(c);
        same += parse_qasm(text.text, text.sidecar) == c;
    }
    auto tiny = dyadic_of_angle(1, 1 << 27);
    bool nonzero = !tiny.is_zero() && tiny == DyadicAngle::canonical(1, 28);
    auto r = check_hybrid(corpus("tcirc.qasm"), corpus("tcirc_small.qasm"), engine_only());
    o.detail << "round trip " << same << "/" << files << " files; pi/2^27 = (" << tiny.multiplier << ", "
             << tiny.denom_exp << "); T vs perturbed T " << to_string(r.verdict.kind);
    o.require(files > 0 && same == files, "round trip");
    o.require(nonzero, "pi/2^27 nonzero");
    o.require(r.verdict.kind == VerdictKind::NotEquivalent, "perturbed T distinguished");
}

}  // namespace
}  // namespace hqec

int main() {
    using namespace hqec;
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"AC1 deferred measurement", ac1}, {"AC2 teleportation", ac2},       {"AC3 cswap and qcec pairs", ac3},
        {"AC4 mutants", ac4},              {"AC5 rule soundness", ac5},      {"AC6 scalability", ac6},
        {"AC7 double teleportation", ac7}, {"AC8 self-equivalence", ac8},    {"AC9 round trip", ac9}};
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
