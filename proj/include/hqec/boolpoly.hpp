// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace hqec {

using Var = std::uint32_t;

/// Sorted, duplicate-free list of variables; the empty monomial is the constant 1.
using Monomial = std::vector<Var>;

Monomial monomial_union(const Monomial& a, const Monomial& b);
bool monomial_contains(const Monomial& m, Var v);
Monomial monomial_without(const Monomial& m, Var v);

/// XOR of AND-monomials over GF(2), kept canonical by construction.
class BoolPoly {
public:
    BoolPoly() = default;
    static BoolPoly zero() { return {}; }
    static BoolPoly one();
    static BoolPoly var(Var v);
    static BoolPoly of(const Monomial& m);

    [[nodiscard]] const std::set<Monomial>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool is_one() const;
    [[nodiscard]] bool is_var(Var v) const;
    [[nodiscard]] bool contains(Var v) const;
    [[nodiscard]] std::set<Var> vars() const;

    void toggle(const Monomial& m);
    BoolPoly& operator^=(const BoolPoly& o);
    friend BoolPoly operator^(BoolPoly a, const BoolPoly& b) { return a ^= b; }
    friend BoolPoly operator*(const BoolPoly& a, const BoolPoly& b);

    /// Replace v by p everywhere.
    [[nodiscard]] BoolPoly substitute(Var v, const BoolPoly& p) const;
    /// Replace every variable through f (which must be injective on this polynomial's variables).
    [[nodiscard]] BoolPoly rename(const std::function<Var(Var)>& f) const;
    [[nodiscard]] bool eval(const std::function<bool(Var)>& value) const;

    [[nodiscard]] std::string str(const std::function<std::string(Var)>& name) const;

    friend bool operator==(const BoolPoly&, const BoolPoly&) = default;
    friend auto operator<=>(const BoolPoly&, const BoolPoly&) = default;

private:
    std::set<Monomial> terms_;
};

}  // namespace hqec
