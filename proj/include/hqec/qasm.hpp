// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hqec/circuit.hpp"

namespace hqec {

/// Discard annotations carried next to a program, naming wires as
/// `reg[i]` or a whole register `reg`.
struct Sidecar {
    std::vector<std::string> discard;
    std::optional<std::vector<std::string>> keep;
    friend bool operator==(const Sidecar&, const Sidecar&) = default;
};

/// Throws ParseError on malformed JSON or a discard/keep overlap.
Sidecar parse_sidecar(std::string_view json);
std::string to_json(const Sidecar& s);

struct ParsedProgram {
    HybridCircuit circuit;
    std::vector<std::string> wire_names;  // indexed by WireId
    std::vector<std::string> warnings;
};

/// Parses the supported OpenQASM 2.0 subset. Discards come from
/// `// @discard` pragmas and the sidecar; the sidecar's keep list
/// overrides pragmas on conflict.
ParsedProgram parse_program(std::string_view text, const std::optional<Sidecar>& sidecar = std::nullopt);
HybridCircuit parse_qasm(std::string_view text, const std::optional<Sidecar>& sidecar = std::nullopt);

/// Angle literal evaluated to an exact rational multiple of pi where
/// possible; floats are accepted within 2^-40 of a dyadic with k <= 32.
DyadicAngle dyadic_of_angle(double radians);
/// p/q * pi with q a power of two.
DyadicAngle dyadic_of_angle(std::int64_t p, std::int64_t q);

bool is_builtin_gate(const std::string& name);

/// Kernel lowering of a qelib1 gate. Throws UnsupportedGate.
std::vector<Apply> lower_gate(const std::string& name, const std::vector<DyadicAngle>& params,
                              const std::vector<WireId>& operands);

struct EmittedProgram {
    std::string text;
    Sidecar sidecar;
};

/// Prints c so that parse_qasm(text) == c. Kernel gates without a qelib1
/// form use kx_<nc>, kh_<nc>, krz_<nc>(a), kph_<nc>(a): nc controls, then targets.
EmittedProgram emit_qasm(const HybridCircuit& c);

std::filesystem::path sidecar_path(const std::filesystem::path& program);
/// Reads a program and its `<stem>.sidecar.json` when present.
ParsedProgram load_qasm(const std::filesystem::path& path);
/// Writes the program and, when c has discards, its sidecar.
void save_qasm(const std::filesystem::path& path, const HybridCircuit& c);

}  // namespace hqec
