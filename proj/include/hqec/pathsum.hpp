// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hqec/boolpoly.hpp"
#include "hqec/circuit.hpp"
#include "hqec/dyadic.hpp"

namespace hqec {

/// Multilinear polynomial with coefficients in the dyadics modulo 2.
/// Zero coefficients are never stored.
class PhasePoly {
public:
    [[nodiscard]] const std::map<Monomial, Dyadic>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] Dyadic coeff(const Monomial& m) const;
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] bool contains(Var v) const;

    void add(const Monomial& m, Dyadic c);
    PhasePoly& operator+=(const PhasePoly& o);
    PhasePoly& operator-=(const PhasePoly& o);
    /// Adds c * lift(b), where lift is the arithmetic embedding of b; only
    /// terms whose coefficient survives modulo 2 are generated.
    void add_lifted(const BoolPoly& b, Dyadic c);

    [[nodiscard]] PhasePoly substitute(Var v, const BoolPoly& p) const;
    [[nodiscard]] PhasePoly rename(const std::function<Var(Var)>& f) const;
    [[nodiscard]] Dyadic eval(const std::function<bool(Var)>& value) const;
    [[nodiscard]] std::string str(const std::function<std::string(Var)>& name) const;

    friend bool operator==(const PhasePoly&, const PhasePoly&) = default;

private:
    std::map<Monomial, Dyadic> terms_;
};

/// The arithmetic polynomial equal to b on every Boolean assignment.
PhasePoly lift(const BoolPoly& b);

/// |x> -> 2^(-scale/2) * sum_y exp(i*pi*phase(x,y)) |outputs(x,y)>.
/// Variables 0..n_in-1 are inputs; path variables are listed in `path`.
struct PathSum {
    std::uint32_t n_in = 0;
    std::set<Var> zeroed;  // inputs projected onto |0>
    std::set<Var> path;
    Var next_var = 0;
    int scale = 0;
    PhasePoly phase;
    std::vector<BoolPoly> outputs;

    [[nodiscard]] std::size_t n_out() const { return outputs.size(); }
    [[nodiscard]] bool is_input(Var v) const { return v < n_in; }
    Var fresh();
    /// Readable rendering: 2^{-s/2} Σ_{y..} e^{iπ(...)} |f0, f1, ...⟩
    [[nodiscard]] std::string str() const;

    friend bool operator==(const PathSum&, const PathSum&) = default;
};

PathSum identity(std::uint32_t n);

void apply_gate_in_place(PathSum& ps, const Apply& ins);
PathSum apply_gate(PathSum ps, const Apply& ins);

enum class Rule : std::uint8_t { Elim, HH, Omega };
const char* to_string(Rule r);

struct ReduceStats {
    std::size_t elim = 0;
    std::size_t hh = 0;
    std::size_t omega = 0;
    std::size_t path_peak = 0;
    [[nodiscard]] std::size_t firings() const { return elim + hh + omega; }
    ReduceStats& operator+=(const ReduceStats& o);
};

struct ReduceHooks {
    /// Called after each rule firing with the sums before and after.
    std::function<void(Rule, const PathSum&, const PathSum&)> observer;
    /// Polled between firings; returning true aborts with Timeout.
    std::function<bool()> expired;
    ReduceStats* stats = nullptr;
};

void reduce_in_place(PathSum& ps, const ReduceHooks& hooks = {});
PathSum reduce(PathSum ps, const ReduceHooks& hooks = {});

struct BuildOptions {
    std::size_t reduce_every = 1;  // 0 disables interleaved reduction
    ReduceHooks hooks;
};

PathSum of_unitary_circuit(const std::vector<Apply>& u, std::uint32_t n, const BuildOptions& opt = {});
std::vector<Apply> adjoint_circuit(const std::vector<Apply>& u);

PathSum project(PathSum ps, const std::set<Var>& zeroed);

struct SeparationResult {
    PathSum kept;
    bool residual_ok = false;
    /// Scale exponent of the discarded factor (its norm is 2^(-scale/2) times its path count).
    int discarded_scale = 0;
};

/// Syntactic factorisation into a kept part (outputs not in `discarded`)
/// and an input-independent discarded part. nullopt when no such split is found.
std::optional<SeparationResult> separate(const PathSum& ps, const std::set<std::size_t>& discarded,
                                         const ReduceHooks& hooks = {});

bool equal_syntactic(const PathSum& a, const PathSum& b, bool up_to_global_phase);

/// No path variables, scale 0, f_j = x_j (or 0 for zeroed inputs) and an
/// empty phase, or a constant one when global phase is tolerated.
bool is_identity(const PathSum& ps, bool up_to_global_phase);

}  // namespace hqec
