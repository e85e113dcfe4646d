// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace hqec {

/// A phase coefficient c taken modulo 2; the phase factor it denotes is
/// exp(i*pi*c).
///
/// The value is held as a 63-bit fixed-point number with 62 fractional bits,
/// so every dyadic rational m/2^k with k <= 62 is represented exactly and
/// addition wraps modulo 2 for free.
class Dyadic {
public:
    static constexpr int kFracBits = 62;

    constexpr Dyadic() = default;

    /// m / 2^k modulo 2. Throws std::out_of_range when k is outside [0, 62].
    static Dyadic fraction(std::int64_t m, int k);
    static Dyadic integer(std::int64_t n) { return fraction(n, 0); }
    static constexpr Dyadic from_raw(std::uint64_t raw) { return Dyadic(raw & kMask); }

    [[nodiscard]] constexpr std::uint64_t raw() const noexcept { return raw_; }
    [[nodiscard]] constexpr bool is_zero() const noexcept { return raw_ == 0; }
    [[nodiscard]] bool is_integer() const noexcept;

    /// Exponent e with value = odd / 2^e; 0 for integers (including zero).
    [[nodiscard]] int denominator_exponent() const noexcept;

    /// Lowest terms: value = numerator / 2^exponent with numerator in [0, 2^(exponent+1)).
    [[nodiscard]] std::pair<std::uint64_t, int> reduced() const noexcept;

    [[nodiscard]] double to_double() const noexcept;
    [[nodiscard]] std::string str() const;

    friend constexpr Dyadic operator+(Dyadic a, Dyadic b) noexcept { return from_raw(a.raw_ + b.raw_); }
    friend constexpr Dyadic operator-(Dyadic a, Dyadic b) noexcept { return from_raw(a.raw_ - b.raw_); }
    friend constexpr Dyadic operator-(Dyadic a) noexcept { return from_raw(0 - a.raw_); }
    friend constexpr Dyadic operator*(Dyadic a, std::int64_t n) noexcept {
        return from_raw(a.raw_ * static_cast<std::uint64_t>(n));
    }
    Dyadic& operator+=(Dyadic o) noexcept { return *this = *this + o; }
    Dyadic& operator-=(Dyadic o) noexcept { return *this = *this - o; }

    friend constexpr bool operator==(Dyadic, Dyadic) = default;
    friend constexpr auto operator<=>(Dyadic, Dyadic) = default;

private:
    static constexpr std::uint64_t kMask = (std::uint64_t{1} << 63) - 1;
    constexpr explicit Dyadic(std::uint64_t raw) : raw_(raw) {}
    std::uint64_t raw_ = 0;
};

/// An angle pi * multiplier / 2^(denom_exp - 1), canonical: multiplier in
/// [0, 2^denom_exp) and odd unless the angle is zero (then both are 0).
struct DyadicAngle {
    std::int64_t multiplier = 0;
    int denom_exp = 0;

    [[nodiscard]] static DyadicAngle canonical(std::int64_t m, int k);
    [[nodiscard]] bool is_zero() const noexcept { return multiplier == 0; }
    [[nodiscard]] double radians() const noexcept;
    /// The phase coefficient m / 2^(k-1) as a Dyadic.
    [[nodiscard]] Dyadic coefficient() const;
    [[nodiscard]] DyadicAngle negated() const { return canonical(-multiplier, denom_exp); }
    [[nodiscard]] DyadicAngle halved() const { return canonical(multiplier, denom_exp + 1); }
    [[nodiscard]] DyadicAngle plus(DyadicAngle o) const;

    friend bool operator==(const DyadicAngle&, const DyadicAngle&) = default;
};

/// Largest admissible denominator exponent; coefficients need k - 1 <= 62.
inline constexpr int kMaxDenomExp = Dyadic::kFracBits + 1;

}  // namespace hqec
