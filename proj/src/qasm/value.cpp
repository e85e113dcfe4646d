// SPDX-License-Identifier: Apache-2.0

#include "value.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "hqec/errors.hpp"
#include "hqec/qasm.hpp"

namespace hqec::qasm {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::optional<Rational> add(Rational x, Rational y) {
    return Rational::make(__int128{x.num} * y.den + __int128{y.num} * x.den, __int128{x.den} * y.den);
}

std::optional<Rational> mul(Rational x, Rational y) {
    // cross-cancel first so products of reduced fractions stay small
    __int128 g1 = gcd128(x.num, y.den), g2 = gcd128(y.num, x.den);
    g1 = g1 == 0 ? 1 : g1;
    g2 = g2 == 0 ? 1 : g2;
    return Rational::make((x.num / g1) * (y.num / g2), (x.den / g2) * (y.den / g1));
}

}  // namespace

std::optional<Rational> Rational::make(__int128 num, __int128 den) {
    if (den == 0) {
        return std::nullopt;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits(num) || !fits(den)) {
        return std::nullopt;
    }
    return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Value Value::rational(Rational r) {
    Value v;
    v.a = r;
    return v;
}

Value Value::pi() {
    Value v;
    v.b = {1, 1};
    return v;
}

Value Value::real(double d) {
    Value v;
    v.exact = false;
    v.approx = d;
    return v;
}

double Value::to_double() const {
    return exact ? a.to_double() + b.to_double() * std::numbers::pi : approx;
}

std::string Value::str() const {
    if (!exact) {
        return std::to_string(approx);
    }
    std::string s;
    if (!a.is_zero() || b.is_zero()) {
        s = std::to_string(a.num) + (a.den != 1 ? "/" + std::to_string(a.den) : "");
    }
    if (!b.is_zero()) {
        s += (s.empty() ? "" : " + ") + std::to_string(b.num) + "*pi" + (b.den != 1 ? "/" + std::to_string(b.den) : "");
    }
    return s;
}

Value operator+(const Value& x, const Value& y) {
    if (x.exact && y.exact) {
        auto a = add(x.a, y.a), b = add(x.b, y.b);
        if (a && b) {
            Value v;
            v.a = *a;
            v.b = *b;
            return v;
        }
    }
    return Value::real(x.to_double() + y.to_double());
}

Value operator-(const Value& x) {
    if (x.exact && x.a.num != std::numeric_limits<std::int64_t>::min() &&
        x.b.num != std::numeric_limits<std::int64_t>::min()) {
        Value v = x;
        v.a.num = -v.a.num;
        v.b.num = -v.b.num;
        return v;
    }
    return Value::real(-x.to_double());
}

Value operator*(const Value& x, const Value& y) {
    if (x.exact && y.exact && (x.b.is_zero() || y.b.is_zero())) {
        auto a = mul(x.a, y.a), b1 = mul(x.a, y.b), b2 = mul(x.b, y.a);
        if (a && b1 && b2) {
            if (auto b = add(*b1, *b2)) {
                Value v;
                v.a = *a;
                v.b = *b;
                return v;
            }
        }
    }
    return Value::real(x.to_double() * y.to_double());
}

Value operator/(const Value& x, const Value& y) {
    if (y.exact && y.a.is_zero() && y.b.is_zero()) {
        throw Error("division by zero");
    }
    if (x.exact && y.exact) {
        if (y.b.is_zero()) {
            Rational inv{y.a.den, y.a.num};
            if (inv.den < 0) {
                inv = {-inv.num, -inv.den};
            }
            auto a = mul(x.a, inv), b = mul(x.b, inv);
            if (a && b) {
                Value v;
                v.a = *a;
                v.b = *b;
                return v;
            }
        } else if (y.a.is_zero() && x.a.is_zero()) {
            if (auto r = Rational::make(__int128{x.b.num} * y.b.den, __int128{x.b.den} * y.b.num)) {
                return Value::rational(*r);
            }
        }
    }
    if (y.to_double() == 0) {
        throw Error("division by zero");
    }
    return Value::real(x.to_double() / y.to_double());
}

Value Value::pow(const Value& e) const {
    if (exact && e.exact && b.is_zero() && e.b.is_zero() && e.a.den == 1 && std::abs(e.a.num) <= 64) {
        Value r = Value::rational({1, 1});
        bool ok = true;
        for (std::int64_t i = 0; i < std::abs(e.a.num) && ok; ++i) {
            auto p = mul(r.a, a);
            ok = p.has_value();
            if (ok) {
                r.a = *p;
            }
        }
        if (ok) {
            return e.a.num < 0 ? Value::rational({1, 1}) / r : r;
        }
    }
    return Value::real(std::pow(to_double(), e.to_double()));
}

Value parse_number(const std::string& text) {
    // mantissa digits and decimal exponent, exact when representable
    __int128 num = 0;
    int scale = 0;
    bool ok = true;
    std::size_t i = 0;
    bool frac = false;
    for (; i < text.size() && text[i] != 'e'; ++i) {
        if (text[i] == '.') {
            frac = true;
            continue;
        }
        num = num * 10 + (text[i] - '0');
        if (num > (__int128{1} << 100)) {
            ok = false;
            break;
        }
        scale -= frac ? 1 : 0;
    }
    if (ok && i < text.size()) {
        long e = std::stol(text.substr(i + 1));
        if (e > 40 || e < -40) {
            ok = false;
        } else {
            scale += static_cast<int>(e);
        }
    }
    if (ok) {
        __int128 den = 1;
        for (; scale > 0 && ok; --scale) {
            num *= 10;
            ok = num < (__int128{1} << 120);
        }
        for (; scale < 0 && ok; ++scale) {
            den *= 10;
            ok = den < (__int128{1} << 120);
        }
        if (ok) {
            if (auto r = Rational::make(num, den)) {
                return Value::rational(*r);
            }
        }
    }
    return Value::real(std::stod(text));
}

DyadicAngle angle_of(const Value& v) {
    if (v.exact && v.a.is_zero()) {
        return dyadic_of_angle(v.b.num, v.b.den);
    }
    return dyadic_of_angle(v.to_double());
}

}  // namespace hqec::qasm

namespace hqec {

DyadicAngle dyadic_of_angle(std::int64_t p, std::int64_t q) {
    if (q <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(q))) {
        throw NonDyadicAngle(static_cast<double>(p) / static_cast<double>(q) * std::numbers::pi);
    }
    const int e = std::countr_zero(static_cast<std::uint64_t>(q));
    if (e + 1 > kMaxDenomExp) {
        throw NonDyadicAngle(static_cast<double>(p) / static_cast<double>(q) * std::numbers::pi);
    }
    return DyadicAngle::canonical(p, e + 1);
}

DyadicAngle dyadic_of_angle(double radians) {
    constexpr int kMaxK = 32;
    const double tol = std::ldexp(1.0, -40);
    if (!std::isfinite(radians)) {
        throw NonDyadicAngle(radians);
    }
    const double turn = 2 * std::numbers::pi;
    const double r = std::fmod(radians, turn);
    const double m = std::nearbyint(std::ldexp(r / std::numbers::pi, kMaxK - 1));
    if (std::abs(r - std::ldexp(m, 1 - kMaxK) * std::numbers::pi) > tol) {
        throw NonDyadicAngle(radians);
    }
    // a small nonzero angle must not collapse to 0
    if (m == 0 && radians != 0 && std::abs(radians) < std::numbers::pi) {
        throw NonDyadicAngle(radians);
    }
    return DyadicAngle::canonical(static_cast<std::int64_t>(m), kMaxK);
}

}  // namespace hqec
