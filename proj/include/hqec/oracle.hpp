// SPDX-License-Identifier: Apache-2.0

// Brute-force dense simulation, used only as an independent test oracle.
// Basis indices are little-endian: wire w is bit w of the index.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "hqec/circuit.hpp"
#include "hqec/pathsum.hpp"

namespace hqec::oracle {

using Matrix = Eigen::MatrixXcd;

inline constexpr std::uint32_t kMaxUnitaryQubits = 12;
inline constexpr std::uint32_t kMaxChannelQubits = 5;

/// Left-multiplies m (rows indexed by basis states) by the gate's matrix.
void apply_left(Matrix& m, const Apply& a);

Matrix simulate_unitary(const std::vector<Apply>& u, std::uint32_t n);

struct ChoiMatrix {
    Matrix m;  // J[(i << n_kept) | a, (j << n_kept) | b] = E(|i><j|)[a, b]
    std::uint32_t n_in = 0;
    std::uint32_t n_kept = 0;
};

/// Channel from the primary inputs to the kept wires (both in index order).
ChoiMatrix simulate_channel(const HybridCircuit& c, std::uint32_t max_qubits = kMaxChannelQubits);

double channel_distance(const ChoiMatrix& a, const ChoiMatrix& b);

bool oracle_equiv(const HybridCircuit& c1, const HybridCircuit& c2, double tol = 1e-9);

/// Dense 2^n_out x 2^n_in matrix of a path sum by enumerating every path.
/// Columns for zeroed inputs are evaluated with the projected polynomials.
Matrix evaluate(const PathSum& ps);

}  // namespace hqec::oracle
