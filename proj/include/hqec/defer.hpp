// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hqec/circuit.hpp"

namespace hqec {

struct MeasBinding {
    ClassicalBitId c = 0;
    WireId q = 0;
};

/// Replaces classical bit b.c by a quantum control on b.q; NotBit(b.c) becomes X(b.q).
Instruction mc_rewrite(const Instruction& ins, MeasBinding b);

/// Moves every Init to the front, keeping relative order otherwise.
HybridCircuit push_inits(const HybridCircuit& c);

/// Moves every Measure to the back, rewriting what follows it through
/// mc_rewrite, then folds the classical controls left on never-measured
/// (constant) bits.
HybridCircuit defer_measures(const HybridCircuit& c);

HybridCircuit deferred_measurement(const HybridCircuit& c);

}  // namespace hqec
