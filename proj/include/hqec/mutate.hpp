// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hqec/circuit.hpp"

namespace hqec {

enum class MutationKind : std::uint8_t { InsertGate, DeleteGate, FlipControl, PerturbAngle, SwapAdjacent };

const char* to_string(MutationKind k);

struct MutationOp {
    MutationKind kind = MutationKind::PerturbAngle;
    std::size_t site = 0;            // instruction index
    std::optional<Apply> gate;       // InsertGate: the new gate
    std::optional<WireId> control;   // FlipControl: wire whose control is toggled
    DyadicAngle delta{};             // PerturbAngle: added to the gate's angle

    [[nodiscard]] std::string str() const;
};

/// nullopt when the op does not apply at its site or breaks well-formedness.
std::optional<HybridCircuit> apply_mutation(const HybridCircuit& c, const MutationOp& op);

/// Odd dyadic delta pi*m/2^(k-1) with k in [1, max_k].
DyadicAngle random_delta(std::mt19937_64& rng, int max_k);

MutationOp random_mutation(std::mt19937_64& rng, const HybridCircuit& c, bool perturb_only);

struct Mutant {
    HybridCircuit circuit;
    MutationOp op;
    /// Choi distance to the original, or -1 when the checker confirmed instead.
    double distance = -1;
};

struct MutateOptions {
    std::uint32_t oracle_max_qubits = 5;
    double min_distance = 1e-9;
    std::size_t attempts_per_mutant = 200;
    double check_timeout_s = 30;
};

/// Deterministic per seed. Circuits within the oracle cap are confirmed by
/// channel distance; larger ones only get angle perturbations confirmed by
/// a NotEquivalent verdict. Throws MutationFailed when count confirmed
/// mutants are not found within the attempt budget.
std::vector<Mutant> generate_mutants(const HybridCircuit& c, std::uint64_t seed, std::size_t count,
                                     const MutateOptions& opt = {});

/// Confirms a given mutant the same way; returns its distance, -1 for a
/// checker confirmation, nullopt when unconfirmed.
std::optional<double> confirm_mutant(const HybridCircuit& original, const HybridCircuit& mutant,
                                     const MutateOptions& opt = {});

}  // namespace hqec
