// SPDX-License-Identifier: Apache-2.0

#include "hqec/mutate.hpp"

#include <algorithm>

#include "hqec/equiv.hpp"
#include "hqec/errors.hpp"
#include "hqec/oracle.hpp"

namespace hqec {

const char* to_string(MutationKind k) {
    switch (k) {
    case MutationKind::InsertGate:
        return "insert-gate";
    case MutationKind::DeleteGate:
        return "delete-gate";
    case MutationKind::FlipControl:
        return "flip-control";
    case MutationKind::PerturbAngle:
        return "perturb-angle";
    case MutationKind::SwapAdjacent:
        return "swap-adjacent";
    }
    return "?";
}

std::string MutationOp::str() const {
    std::string s = std::string(to_string(kind)) + " @" + std::to_string(site);
    if (gate) {
        s += " " + to_string(Instruction(*gate));
    }
    if (control) {
        s += " q" + std::to_string(*control);
    }
    if (kind == MutationKind::PerturbAngle) {
        s += " +pi*" + std::to_string(delta.multiplier) + "/2^" + std::to_string(std::max(delta.denom_exp - 1, 0));
    }
    return s;
}

namespace {

Apply* apply_at(HybridCircuit& c, std::size_t site) {
    if (site >= c.body.size()) {
        return nullptr;
    }
    if (auto* a = std::get_if<Apply>(&c.body[site])) {
        return a;
    }
    if (auto* cc = std::get_if<ClassicallyControlled>(&c.body[site])) {
        return &cc->inner;
    }
    return nullptr;
}

}  // namespace

std::optional<HybridCircuit> apply_mutation(const HybridCircuit& c, const MutationOp& op) {
    HybridCircuit m = c;
    switch (op.kind) {
    case MutationKind::InsertGate:
        if (!op.gate || op.site > m.body.size()) {
            return std::nullopt;
        }
        m.body.insert(m.body.begin() + static_cast<std::ptrdiff_t>(op.site), *op.gate);
        break;
    case MutationKind::DeleteGate:
        if (!apply_at(m, op.site)) {
            return std::nullopt;
        }
        m.body.erase(m.body.begin() + static_cast<std::ptrdiff_t>(op.site));
        break;
    case MutationKind::FlipControl: {
        Apply* a = apply_at(m, op.site);
        if (!a || !op.control) {
            return std::nullopt;
        }
        auto it = std::find(a->controls.begin(), a->controls.end(), *op.control);
        if (it != a->controls.end()) {
            a->controls.erase(it);
        } else {
            a->controls.push_back(*op.control);
        }
        break;
    }
    case MutationKind::PerturbAngle: {
        Apply* a = apply_at(m, op.site);
        if (!a || !a->gate.has_angle() || op.delta.is_zero()) {
            return std::nullopt;
        }
        a->gate.angle = a->gate.angle.plus(op.delta);
        break;
    }
    case MutationKind::SwapAdjacent:
        if (op.site + 1 >= m.body.size() || m.body[op.site] == m.body[op.site + 1]) {
            return std::nullopt;
        }
        std::swap(m.body[op.site], m.body[op.site + 1]);
        break;
    }
    if (!is_well_formed(m)) {
        return std::nullopt;
    }
    return m;
}

DyadicAngle random_delta(std::mt19937_64& rng, int max_k) {
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_k));
    const std::uint64_t half = std::uint64_t{1} << (k - 1);
    return DyadicAngle::canonical(static_cast<std::int64_t>(2 * (rng() % half) + 1), k);
}

MutationOp random_mutation(std::mt19937_64& rng, const HybridCircuit& c, bool perturb_only) {
    constexpr int kMaxK = 10;
    MutationOp op;
    std::vector<std::size_t> angled;
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        const Apply* a = std::get_if<Apply>(&c.body[i]);
        if (const auto* cc = std::get_if<ClassicallyControlled>(&c.body[i])) {
            a = &cc->inner;
        }
        if (a && a->gate.has_angle()) {
            angled.push_back(i);
        }
    }
    const std::uint32_t n = std::max(c.n_qubits, 1u);
    auto random_site = [&](std::size_t extra) {
        return static_cast<std::size_t>(rng() % (c.body.size() + extra));
    };
    if (perturb_only) {
        if (angled.empty()) {
            // an absent rotation is RZ(0); perturbing it inserts one
            op.kind = MutationKind::InsertGate;
            op.site = random_site(1);
            op.gate = Apply{Gate::rz(random_delta(rng, kMaxK)), {}, {static_cast<WireId>(rng() % n)}};
        } else {
            op.site = angled[rng() % angled.size()];
            op.delta = random_delta(rng, kMaxK);
        }
        return op;
    }
    op.kind = static_cast<MutationKind>(rng() % 5);
    switch (op.kind) {
    case MutationKind::InsertGate: {
        op.site = random_site(1);
        Gate g;
        switch (rng() % 3) {
        case 0:
            g = Gate::x();
            break;
        case 1:
            g = Gate::h();
            break;
        default:
            g = Gate::rz(random_delta(rng, kMaxK));
            break;
        }
        Apply a{g, {}, {static_cast<WireId>(rng() % n)}};
        if (n > 1 && rng() % 2) {
            a.controls.push_back((a.targets[0] + 1 + static_cast<WireId>(rng() % (n - 1))) % n);
        }
        op.gate = a;
        break;
    }
    case MutationKind::FlipControl:
        op.site = c.body.empty() ? 0 : random_site(0);
        op.control = static_cast<WireId>(rng() % n);
        break;
    case MutationKind::PerturbAngle:
        op.site = angled.empty() ? (c.body.empty() ? 0 : random_site(0)) : angled[rng() % angled.size()];
        op.delta = random_delta(rng, kMaxK);
        break;
    default:
        op.site = c.body.empty() ? 0 : random_site(0);
        break;
    }
    return op;
}

std::optional<double> confirm_mutant(const HybridCircuit& original, const HybridCircuit& mutant,
                                     const MutateOptions& opt) {
    if (original.n_qubits <= opt.oracle_max_qubits && mutant.n_qubits <= opt.oracle_max_qubits) {
        try {
            double d = oracle::channel_distance(oracle::simulate_channel(original, opt.oracle_max_qubits),
                                                oracle::simulate_channel(mutant, opt.oracle_max_qubits));
            return d > opt.min_distance ? std::optional(d) : std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    CheckOptions co;
    co.structural_shortcut = false;
    co.timeout_s = opt.check_timeout_s;
    if (check_hybrid(original, mutant, co).verdict.kind == VerdictKind::NotEquivalent) {
        return -1.0;
    }
    return std::nullopt;
}

std::vector<Mutant> generate_mutants(const HybridCircuit& c, std::uint64_t seed, std::size_t count,
                                     const MutateOptions& opt) {
    require_well_formed(c);
    std::mt19937_64 rng(seed);
    const bool perturb_only = c.n_qubits > opt.oracle_max_qubits;
    std::vector<Mutant> out;
    const std::size_t budget = opt.attempts_per_mutant * std::max<std::size_t>(count, 1);
    for (std::size_t attempt = 0; attempt < budget && out.size() < count; ++attempt) {
        MutationOp op = random_mutation(rng, c, perturb_only);
        auto m = apply_mutation(c, op);
        if (!m || std::any_of(out.begin(), out.end(), [&](const Mutant& x) { return x.circuit == *m; })) {
            continue;
        }
        if (auto d = confirm_mutant(c, *m, opt)) {
            out.push_back({std::move(*m), op, *d});
        }
    }
    if (out.size() < count) {
        throw MutationFailed("found " + std::to_string(out.size()) + " of " + std::to_string(count) +
                             " confirmed mutants in " + std::to_string(budget) + " attempts");
    }
    return out;
}

}  // namespace hqec
