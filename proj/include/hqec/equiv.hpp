// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hqec/circuit.hpp"
#include "hqec/pathsum.hpp"

namespace hqec {

enum class VerdictKind : std::uint8_t { Equivalent, NotEquivalent, Inconclusive, Error };

enum class StallReason : std::uint8_t {
    None,
    ReductionStalled,
    SeparationFailed,
    ResidualNotPure,  // discarded factor depends on the input
    BlockMismatch,    // init or kept-measurement blocks differ
    MeasuredOutputs,  // disequality not observable through measured kept wires
    Timeout,
};

struct Witness {
    std::uint64_t input = 0;  // basis index over the primary inputs, wire 0 least significant
    std::string observable;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    StallReason reason = StallReason::None;
    std::optional<Witness> witness;
    std::string message;

    static Verdict equivalent() { return {VerdictKind::Equivalent, StallReason::None, {}, {}}; }
    static Verdict not_equivalent(Witness w) { return {VerdictKind::NotEquivalent, StallReason::None, std::move(w), {}}; }
    static Verdict inconclusive(StallReason r, std::string msg = {}) {
        return {VerdictKind::Inconclusive, r, {}, std::move(msg)};
    }
    static Verdict error(std::string msg) { return {VerdictKind::Error, StallReason::None, {}, std::move(msg)}; }
};

const char* to_string(VerdictKind k);
const char* to_string(StallReason r);

struct Metrics {
    double wall_ms = 0;
    std::size_t path_var_peak = 0;
    std::size_t rule_firings = 0;
};

struct CheckOptions {
    double timeout_s = 600;
    /// Accept structurally identical normal forms without running the engine.
    bool structural_shortcut = true;
    std::size_t reduce_every = 1;
    /// Collect path-sum renderings of the intermediate steps.
    bool explain = false;
};

/// Shared state of one check: deadline, statistics and the explanation log.
class CheckContext {
public:
    explicit CheckContext(const CheckOptions& opt = {});
    [[nodiscard]] const CheckOptions& options() const { return opt_; }
    [[nodiscard]] ReduceHooks hooks();
    [[nodiscard]] BuildOptions build_options();
    [[nodiscard]] const ReduceStats& stats() const { return stats_; }
    void note(const std::string& label, const PathSum& ps);
    void note(const std::string& line);
    [[nodiscard]] const std::vector<std::string>& log() const { return log_; }

private:
    CheckOptions opt_;
    double deadline_ms_;
    ReduceStats stats_;
    std::vector<std::string> log_;
};

/// Two decompositions embedded in one register: primary inputs first
/// (positionally aligned), then circuit 1's ancillas, then circuit 2's.
/// Each side Inits and discards the other side's ancillas.
struct AlignedPair {
    std::uint32_t n = 0;
    std::uint32_t n_primary = 0;
    std::vector<WireId> map1, map2;  // original wire -> common wire
    std::vector<Apply> u1, u2;
    std::set<WireId> init1, init2;
    std::set<WireId> discard1, discard2;
    std::vector<WireId> kept1, kept2;  // kept1[i] is aligned with kept2[i]
    std::vector<bool> kept_measured1, kept_measured2;
};

/// Throws ArityMismatch when primary input or kept output counts differ.
AlignedPair pad_ancillas(const IUMDecomposition& d1, const IUMDecomposition& d2);

bool compare_im_blocks(const AlignedPair& p);

Verdict check_unitary(const std::vector<Apply>& u1, const std::vector<Apply>& u2, std::uint32_t n,
                      CheckContext& ctx);
Verdict check_unitary(const std::vector<Apply>& u1, const std::vector<Apply>& u2, std::uint32_t n);

Verdict check_partial(const AlignedPair& p, CheckContext& ctx);

struct CheckResult {
    Verdict verdict;
    ChallengeClass cls = ChallengeClass::DisFree;
    Metrics metrics;
    std::vector<std::string> explanation;
};

CheckResult check_hybrid(const HybridCircuit& c1, const HybridCircuit& c2, const CheckOptions& opt = {});

}  // namespace hqec
