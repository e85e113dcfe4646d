// SPDX-License-Identifier: Apache-2.0

#include "hqec/boolpoly.hpp"

#include <algorithm>
#include <iterator>

namespace hqec {

Monomial monomial_union(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool monomial_contains(const Monomial& m, Var v) {
    return std::binary_search(m.begin(), m.end(), v);
}

Monomial monomial_without(const Monomial& m, Var v) {
    Monomial out;
    out.reserve(m.size());
    for (auto x : m) {
        if (x != v) {
            out.push_back(x);
        }
    }
    return out;
}

BoolPoly BoolPoly::one() {
    BoolPoly p;
    p.terms_.insert(Monomial{});
    return p;
}

BoolPoly BoolPoly::var(Var v) {
    BoolPoly p;
    p.terms_.insert(Monomial{v});
    return p;
}

BoolPoly BoolPoly::of(const Monomial& m) {
    BoolPoly p;
    p.terms_.insert(m);
    return p;
}

bool BoolPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->empty();
}

bool BoolPoly::is_var(Var v) const {
    return terms_.size() == 1 && *terms_.begin() == Monomial{v};
}

bool BoolPoly::contains(Var v) const {
    return std::any_of(terms_.begin(), terms_.end(), [v](const Monomial& m) { return monomial_contains(m, v); });
}

std::set<Var> BoolPoly::vars() const {
    std::set<Var> out;
    for (const auto& m : terms_) {
        out.insert(m.begin(), m.end());
    }
    return out;
}

void BoolPoly::toggle(const Monomial& m) {
    if (auto [it, fresh] = terms_.insert(m); !fresh) {
        terms_.erase(it);
    }
}

BoolPoly& BoolPoly::operator^=(const BoolPoly& o) {
    for (const auto& m : o.terms_) {
        toggle(m);
    }
    return *this;
}

BoolPoly operator*(const BoolPoly& a, const BoolPoly& b) {
    BoolPoly out;
    for (const auto& ma : a.terms_) {
        for (const auto& mb : b.terms_) {
            out.toggle(monomial_union(ma, mb));
        }
    }
    return out;
}

BoolPoly BoolPoly::substitute(Var v, const BoolPoly& p) const {
    BoolPoly out;
    for (const auto& m : terms_) {
        if (!monomial_contains(m, v)) {
            out.toggle(m);
            continue;
        }
        out ^= BoolPoly::of(monomial_without(m, v)) * p;
    }
    return out;
}

BoolPoly BoolPoly::rename(const std::function<Var(Var)>& f) const {
    BoolPoly out;
    for (const auto& m : terms_) {
        Monomial r;
        r.reserve(m.size());
        for (auto v : m) {
            r.push_back(f(v));
        }
        std::sort(r.begin(), r.end());
        out.toggle(r);
    }
    return out;
}

bool BoolPoly::eval(const std::function<bool(Var)>& value) const {
    bool acc = false;
    for (const auto& m : terms_) {
        acc ^= std::all_of(m.begin(), m.end(), value);
    }
    return acc;
}

std::string BoolPoly::str(const std::function<std::string(Var)>& name) const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& m : terms_) {
        if (!first) {
            out += " ⊕ ";
        }
        first = false;
        if (m.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            out += (i ? "·" : "") + name(m[i]);
        }
    }
    return out;
}

}  // namespace hqec
