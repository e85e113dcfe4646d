// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hqec/dyadic.hpp"

namespace hqec {

using WireId = std::uint32_t;
using ClassicalBitId = std::uint32_t;

enum class GateKind : std::uint8_t { Ph, RZ, X, H };

/// Kernel gate. Ph and RZ carry an angle pi*m/2^(k-1); X and H carry none.
/// The angle is always canonical, so structural equality is equality modulo 2*pi.
struct Gate {
    GateKind kind = GateKind::X;
    DyadicAngle angle{};

    static Gate x() { return {GateKind::X, {}}; }
    static Gate h() { return {GateKind::H, {}}; }
    static Gate rz(std::int64_t m, int k) { return {GateKind::RZ, DyadicAngle::canonical(m, k)}; }
    static Gate rz(DyadicAngle a) { return {GateKind::RZ, DyadicAngle::canonical(a.multiplier, a.denom_exp)}; }
    static Gate ph(std::int64_t m, int k) { return {GateKind::Ph, DyadicAngle::canonical(m, k)}; }
    static Gate ph(DyadicAngle a) { return {GateKind::Ph, DyadicAngle::canonical(a.multiplier, a.denom_exp)}; }

    [[nodiscard]] bool has_angle() const { return kind == GateKind::Ph || kind == GateKind::RZ; }
    [[nodiscard]] std::int64_t multiplier() const { return angle.multiplier; }
    [[nodiscard]] int denom_exp() const { return angle.denom_exp; }
    [[nodiscard]] Gate adjoint() const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Gate& a, const Gate& b) {
        return a.kind == b.kind && (!a.has_angle() || a.angle == b.angle);
    }
};

/// Gate applied to every target, each application controlled on all controls.
struct Apply {
    Gate gate;
    std::vector<WireId> controls;
    std::vector<WireId> targets;
    friend bool operator==(const Apply&, const Apply&) = default;
};

/// Fires when every listed bit is 1. A single bit is the common case; the
/// list form carries multi-bit `if (c == v)` conditions.
struct ClassicallyControlled {
    std::vector<ClassicalBitId> bits;
    Apply inner;
    friend bool operator==(const ClassicallyControlled&, const ClassicallyControlled&) = default;
};

struct Measure {
    WireId q = 0;
    ClassicalBitId c = 0;
    friend bool operator==(const Measure&, const Measure&) = default;
};

struct Init {
    WireId q = 0;
    friend bool operator==(const Init&, const Init&) = default;
};

struct NotBit {
    ClassicalBitId c = 0;
    friend bool operator==(const NotBit&, const NotBit&) = default;
};

using Instruction = std::variant<Apply, ClassicallyControlled, Measure, Init, NotBit>;

std::string to_string(const Instruction& ins);

struct HybridCircuit {
    std::uint32_t n_qubits = 0;
    std::uint32_t n_cbits = 0;
    std::vector<Instruction> body;
    std::set<WireId> discards;

    /// Wires never Init-ed, in index order.
    [[nodiscard]] std::vector<WireId> primary_inputs() const;
    /// Wires not discarded, in index order.
    [[nodiscard]] std::vector<WireId> kept_outputs() const;

    friend bool operator==(const HybridCircuit&, const HybridCircuit&) = default;
};

std::string to_string(const HybridCircuit& c);

enum class Constraint : std::uint8_t {
    Structure,         // index out of range, overlapping operands
    SingleWrite,       // (i) a classical bit receives at most one measurement
    NoUseAfterMeasure, // (ii) a measured wire is never addressed again
    FreshInit,         // (iii) an Init-ed wire is untouched before its single Init
};

struct Violation {
    std::size_t index;  // instruction index; body size for circuit-level issues
    Constraint constraint;
    std::string message;
};

std::vector<Violation> validate_well_formed(const HybridCircuit& c);
bool is_well_formed(const HybridCircuit& c);
/// Throws Error listing the first violation.
void require_well_formed(const HybridCircuit& c);

std::size_t l_init(const HybridCircuit& c);
std::size_t e_meas(const HybridCircuit& c);

struct IUMDecomposition {
    std::uint32_t n_qubits = 0;
    std::uint32_t n_cbits = 0;
    std::set<WireId> init_set;
    std::vector<Apply> unitary;
    std::vector<std::pair<WireId, ClassicalBitId>> measured;  // body order
    std::set<WireId> discarded;

    [[nodiscard]] HybridCircuit reassemble() const;
    [[nodiscard]] std::set<WireId> measured_wires() const;
};

IUMDecomposition decompose_ium(const HybridCircuit& c);

enum class ChallengeClass : std::uint8_t { DisFree, Mix, Dis };

const char* to_string(ChallengeClass k);
ChallengeClass classify(const HybridCircuit& c1, const HybridCircuit& c2);

/// Phase-exact replacement of every controlled H by kernel gates with a
/// single controlled X; uncontrolled instructions pass through.
std::vector<Apply> lower_controlled_hadamard(const Apply& a);
HybridCircuit expand_controlled_hadamard(const HybridCircuit& c);

/// Wires addressed by an instruction (controls, targets, measured or Init-ed wire).
std::vector<WireId> wires_of(const Instruction& ins);

}  // namespace hqec
