// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInNormalForm : Error {
    using Error::Error;
};

struct WireOutOfRange : Error {
    using Error::Error;
};

struct ControlledHadamard : Error {
    ControlledHadamard() : Error("controlled H must be lowered before path-sum construction") {}
};

struct ArityMismatch : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct UnsupportedGate : Error {
    explicit UnsupportedGate(const std::string& name) : Error("unsupported gate '" + name + "'"), name(name) {}
    std::string name;
};

struct NonDyadicAngle : Error {
    explicit NonDyadicAngle(double value)
        : Error("angle " + std::to_string(value) + " is not a dyadic multiple of pi"), value(value) {}
    double value;
};

struct UnresolvedSidecarName : Error {
    explicit UnresolvedSidecarName(const std::string& name)
        : Error("sidecar names unknown wire '" + name + "'"), name(name) {}
    std::string name;
};

struct MutationFailed : Error {
    using Error::Error;
};

/// Raised from inside long computations when a deadline passes.
struct Timeout : Error {
    Timeout() : Error("timeout") {}
};

}  // namespace hqec
