// SPDX-License-Identifier: Apache-2.0

#include "hqec/dyadic.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqec {

Dyadic Dyadic::fraction(std::int64_t m, int k) {
    if (k < 0 || k > kFracBits) {
        throw std::out_of_range("dyadic denominator exponent " + std::to_string(k) + " outside [0, 62]");
    }
    return from_raw(static_cast<std::uint64_t>(m) << (kFracBits - k));
}

bool Dyadic::is_integer() const noexcept {
    return (raw_ & ((std::uint64_t{1} << kFracBits) - 1)) == 0;
}

int Dyadic::denominator_exponent() const noexcept {
    if (raw_ == 0) {
        return 0;
    }
    int tz = std::countr_zero(raw_);
    return tz >= kFracBits ? 0 : kFracBits - tz;
}

std::pair<std::uint64_t, int> Dyadic::reduced() const noexcept {
    if (raw_ == 0) {
        return {0, 0};
    }
    int e = denominator_exponent();
    return {raw_ >> (kFracBits - e), e};
}

double Dyadic::to_double() const noexcept {
    return std::ldexp(static_cast<double>(raw_), -kFracBits);
}

std::string Dyadic::str() const {
    auto [num, e] = reduced();
    if (e == 0) {
        return std::to_string(num);
    }
    std::string den = e < 63 ? std::to_string(std::uint64_t{1} << e) : "2^" + std::to_string(e);
    return std::to_string(num) + "/" + den;
}

DyadicAngle DyadicAngle::canonical(std::int64_t m, int k) {
    if (k < 0 || k > kMaxDenomExp) {
        throw std::out_of_range("angle denominator exponent " + std::to_string(k) + " outside [0, 63]");
    }
    // Reduce modulo 2^k (the angle modulo 2*pi), then to lowest terms.
    std::uint64_t um = static_cast<std::uint64_t>(m);
    if (k < 64) {
        um &= k == 0 ? 0 : (k == 63 ? ((std::uint64_t{1} << 63) - 1) : ((std::uint64_t{1} << k) - 1));
    }
    if (um == 0) {
        return {0, 0};
    }
    int tz = std::countr_zero(um);
    return {static_cast<std::int64_t>(um >> tz), k - tz};
}

double DyadicAngle::radians() const noexcept {
    return std::numbers::pi * std::ldexp(static_cast<double>(multiplier), 1 - denom_exp);
}

Dyadic DyadicAngle::coefficient() const {
    if (denom_exp == 0) {
        return {};
    }
    return Dyadic::fraction(multiplier, denom_exp - 1);
}

DyadicAngle DyadicAngle::plus(DyadicAngle o) const {
    // Work on the coefficient scale (62 fractional bits) and convert back.
    Dyadic sum = coefficient() + o.coefficient();
    auto [num, e] = sum.reduced();
    return canonical(static_cast<std::int64_t>(num), e + 1);
}

}  // namespace hqec
