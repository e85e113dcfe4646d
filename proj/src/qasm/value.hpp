// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hqec/dyadic.hpp"

namespace hqec::qasm {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // > 0, gcd(num, den) = 1

    /// nullopt when the reduced result leaves 64 bits.
    static std::optional<Rational> make(__int128 num, __int128 den);
    [[nodiscard]] bool is_zero() const { return num == 0; }
    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// A parameter value a + b*pi, kept exact while the expression stays within
/// rationals and pi; anything else falls back to a double.
struct Value {
    bool exact = true;
    Rational a, b;
    double approx = 0;

    static Value rational(Rational r);
    static Value pi();
    static Value real(double d);

    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string str() const;

    friend Value operator+(const Value& x, const Value& y);
    friend Value operator-(const Value& x);
    friend Value operator-(const Value& x, const Value& y) { return x + (-y); }
    friend Value operator*(const Value& x, const Value& y);
    /// Throws Error on division by an exact zero.
    friend Value operator/(const Value& x, const Value& y);
    /// Integer exponents stay exact.
    [[nodiscard]] Value pow(const Value& e) const;
};

/// Decimal literal such as "0.125" or "1e-3", exact when it fits.
Value parse_number(const std::string& text);

/// Throws NonDyadicAngle.
DyadicAngle angle_of(const Value& v);

}  // namespace hqec::qasm
