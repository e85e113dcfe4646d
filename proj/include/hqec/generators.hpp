// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "hqec/circuit.hpp"

namespace hqec {

/// Quantum Fourier transform on n wires (wire n-1 most significant), final swaps included.
std::vector<Apply> qft(std::uint32_t n);

HybridCircuit unitary_circuit(const std::vector<Apply>& u, std::uint32_t n);

/// Phase estimation with n Init-ed counting wires (0..n-1) on the phase
/// gate RZ(1, n) acting on wire n, which is the only primary input.
/// The dynamic form measures each counting wire right after its final H
/// and classically controls the remaining inverse-transform rotations.
HybridCircuit qpe(std::uint32_t n, bool dynamic);

HybridCircuit bell();
HybridCircuit ghz(std::uint32_t n);

/// Threads each selected wire through the teleportation gadget: two fresh
/// ancillas, Bell preparation, CX/H, then either measurements with classical
/// corrections (dynamic) or quantum corrections with trailing measurements.
/// The sender wires are discarded; the state leaves on the second ancilla.
/// Throws Error when a wire is out of range.
HybridCircuit teleportify(const HybridCircuit& c, const std::vector<WireId>& wires, bool dynamic);

}  // namespace hqec
