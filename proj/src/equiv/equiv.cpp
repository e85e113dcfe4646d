// SPDX-License-Identifier: Apache-2.0

#include "hqec/equiv.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>

#include "hqec/defer.hpp"
#include "hqec/errors.hpp"

namespace hqec {

namespace {

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::Equivalent:
        return "equivalent";
    case VerdictKind::NotEquivalent:
        return "not_equivalent";
    case VerdictKind::Inconclusive:
        return "inconclusive";
    case VerdictKind::Error:
        return "error";
    }
    return "?";
}

const char* to_string(StallReason r) {
    switch (r) {
    case StallReason::None:
        return "none";
    case StallReason::ReductionStalled:
        return "reduction-stalled";
    case StallReason::SeparationFailed:
        return "separation-failed";
    case StallReason::ResidualNotPure:
        return "residual-not-pure";
    case StallReason::BlockMismatch:
        return "block-mismatch";
    case StallReason::MeasuredOutputs:
        return "measured-outputs";
    case StallReason::Timeout:
        return "timeout";
    }
    return "?";
}

CheckContext::CheckContext(const CheckOptions& opt) : opt_(opt), deadline_ms_(now_ms() + opt.timeout_s * 1000.0) {}

ReduceHooks CheckContext::hooks() {
    ReduceHooks h;
    h.stats = &stats_;
    double deadline = deadline_ms_;
    h.expired = [deadline] { return now_ms() > deadline; };
    return h;
}

BuildOptions CheckContext::build_options() {
    return {opt_.reduce_every, hooks()};
}

void CheckContext::note(const std::string& label, const PathSum& ps) {
    if (opt_.explain) {
        log_.push_back(label + ": " + ps.str());
    }
}

void CheckContext::note(const std::string& line) {
    if (opt_.explain) {
        log_.push_back(line);
    }
}

// ---- witnesses ---------------------------------------------------------

namespace {

// An input assignment on which p evaluates to 1: the variables of a
// minimal monomial set to 1, everything else 0. p must be nonzero and
// mention input variables only.
std::uint64_t satisfying_input(const BoolPoly& p) {
    const Monomial* best = nullptr;
    for (const auto& m : p.terms()) {
        if (!best || m.size() < best->size()) {
            best = &m;
        }
    }
    std::uint64_t x = 0;
    for (auto v : *best) {
        if (v < 64) {
            x |= std::uint64_t{1} << v;
        }
    }
    return x;
}

std::uint64_t indicator(const Monomial& m) {
    std::uint64_t x = 0;
    for (auto v : m) {
        if (v < 64) {
            x |= std::uint64_t{1} << v;
        }
    }
    return x;
}

// Why a path-free sum over the register differs from the identity.
Witness disequality_witness(const PathSum& ps, std::uint32_t input_bits) {
    auto clip = [&](std::uint64_t x) { return input_bits >= 64 ? x : x & ((std::uint64_t{1} << input_bits) - 1); };
    for (std::size_t j = 0; j < ps.outputs.size(); ++j) {
        BoolPoly want = ps.zeroed.contains(static_cast<Var>(j)) ? BoolPoly{} : BoolPoly::var(static_cast<Var>(j));
        BoolPoly d = ps.outputs[j] ^ want;
        if (!d.is_zero()) {
            return {clip(satisfying_input(d)), "output wire " + std::to_string(j) + " differs"};
        }
    }
    if (ps.scale != 0) {
        return {0, "output amplitudes differ in norm"};
    }
    const Monomial* best = nullptr;
    for (const auto& [m, c] : ps.phase.terms()) {
        if (!m.empty() && (!best || m.size() < best->size())) {
            best = &m;
        }
    }
    if (best) {
        return {clip(indicator(*best)), "relative phase against input 0 differs"};
    }
    return {0, "global phase differs"};
}

// A sum of phases e^{i*pi*c}, kept exactly: roots of unity of 2-power order
// have the Z-basis {e^{i*pi*c} : 0 <= c < 1}, with e^{i*pi*(c+1)} = -e^{i*pi*c}.
using CyclotomicSum = std::map<std::uint64_t, std::int64_t>;

void add_phase(CyclotomicSum& s, Dyadic c) {
    const std::uint64_t one = std::uint64_t{1} << Dyadic::kFracBits;
    const std::uint64_t r = c.raw();
    auto& slot = s[r >= one ? r - one : r];
    slot += r >= one ? -1 : 1;
}

bool is_zero(const CyclotomicSum& s) {
    return std::all_of(s.begin(), s.end(), [](const auto& kv) { return kv.second == 0; });
}

bool same(const CyclotomicSum& a, const CyclotomicSum& b) {
    auto nz = [](const CyclotomicSum& s) {
        CyclotomicSum t;
        for (const auto& [k, v] : s) {
            if (v != 0) {
                t.emplace(k, v);
            }
        }
        return t;
    };
    return nz(a) == nz(b);
}

// For a stalled miter with few paths, evaluate columns M|x> exactly on a
// bounded set of basis inputs. Identity up to a global phase needs every
// column to be concentrated on x with one common amplitude.
std::optional<Witness> probe_columns(const PathSum& m, std::uint32_t input_bits) {
    constexpr std::size_t kMaxPaths = 16;
    if (m.path.size() > kMaxPaths || m.n_in + m.path.size() > 64 || m.outputs.size() > 64) {
        return std::nullopt;
    }
    std::map<Var, int> bit;
    for (Var i = 0; i < m.n_in; ++i) {
        bit[i] = static_cast<int>(i);
    }
    std::vector<Var> paths(m.path.begin(), m.path.end());
    for (std::size_t k = 0; k < paths.size(); ++k) {
        bit[paths[k]] = static_cast<int>(m.n_in + k);
    }
    auto mask_of = [&](const Monomial& mono) {
        std::uint64_t mask = 0;
        for (auto v : mono) {
            auto it = bit.find(v);
            if (it == bit.end()) {
                return std::optional<std::uint64_t>{};
            }
            mask |= std::uint64_t{1} << it->second;
        }
        return std::optional{mask};
    };
    std::vector<std::pair<std::uint64_t, Dyadic>> phase;
    for (const auto& [mono, c] : m.phase.terms()) {
        auto mk = mask_of(mono);
        if (!mk) {
            return std::nullopt;
        }
        phase.emplace_back(*mk, c);
    }
    std::vector<std::vector<std::uint64_t>> outs;
    for (const auto& f : m.outputs) {
        std::vector<std::uint64_t> masks;
        for (const auto& mono : f.terms()) {
            auto mk = mask_of(mono);
            if (!mk) {
                return std::nullopt;
            }
            masks.push_back(*mk);
        }
        outs.push_back(std::move(masks));
    }
    auto column = [&](std::uint64_t x) {
        std::map<std::uint64_t, CyclotomicSum> col;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << paths.size()); ++y) {
            const std::uint64_t a = x | (y << m.n_in);
            std::uint64_t z = 0;
            for (std::size_t j = 0; j < outs.size(); ++j) {
                bool v = false;
                for (auto mk : outs[j]) {
                    v ^= (a & mk) == mk;
                }
                z |= std::uint64_t{v} << j;
            }
            Dyadic p;
            for (const auto& [mk, c] : phase) {
                if ((a & mk) == mk) {
                    p += c;
                }
            }
            add_phase(col[z], p);
        }
        return col;
    };

    std::vector<std::uint64_t> free_bits;
    for (Var i = 0; i < m.n_in && i < input_bits; ++i) {
        if (!m.zeroed.contains(i)) {
            free_bits.push_back(std::uint64_t{1} << i);
        }
    }
    std::vector<std::uint64_t> candidates{0};
    for (auto b : free_bits) {
        candidates.push_back(b);
    }
    for (std::size_t i = 0; i < free_bits.size(); ++i) {
        for (std::size_t j = i + 1; j < free_bits.size(); ++j) {
            candidates.push_back(free_bits[i] | free_bits[j]);
        }
    }
    std::uint64_t all = 0;
    for (auto b : free_bits) {
        all |= b;
    }
    candidates.push_back(all);
    const std::size_t budget = std::size_t{1} << 22;
    std::size_t spent = 0;
    CyclotomicSum diag0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        spent += std::size_t{1} << paths.size();
        if (spent > budget) {
            break;
        }
        const std::uint64_t x = candidates[i];
        auto col = column(x);
        for (const auto& [z, amp] : col) {
            if (z != x && !is_zero(amp)) {
                return Witness{x, "input maps onto basis state " + std::to_string(z)};
            }
        }
        const CyclotomicSum& d = col[x];
        if (i == 0) {
            diag0 = d;
        } else if (!same(d, diag0)) {
            return Witness{x, "relative phase against input 0 differs"};
        }
    }
    return std::nullopt;
}

Verdict verdict_of_miter(const PathSum& m, std::uint32_t input_bits, bool kept_measured) {
    if (is_identity(m, true)) {
        return Verdict::equivalent();
    }
    if (!m.path.empty()) {
        if (!kept_measured) {
            if (auto w = probe_columns(m, input_bits)) {
                return Verdict::not_equivalent(*w);
            }
        }
        return Verdict::inconclusive(StallReason::ReductionStalled);
    }
    if (kept_measured) {
        return Verdict::inconclusive(StallReason::MeasuredOutputs);
    }
    return Verdict::not_equivalent(disequality_witness(m, input_bits));
}

// Deterministic maps x -> phase |f(x)> whose outputs differ stay
// distinguishable after any basis measurement.
std::optional<Witness> classical_difference(const PathSum& a, const PathSum& b) {
    if (!a.path.empty() || !b.path.empty() || a.outputs.size() != b.outputs.size()) {
        return std::nullopt;
    }
    for (std::size_t j = 0; j < a.outputs.size(); ++j) {
        BoolPoly d = a.outputs[j] ^ b.outputs[j];
        if (!d.is_zero()) {
            return Witness{satisfying_input(d), "kept output " + std::to_string(j) + " differs"};
        }
    }
    return std::nullopt;
}

}  // namespace

// ---- unitary check -----------------------------------------------------

Verdict check_unitary(const std::vector<Apply>& u1, const std::vector<Apply>& u2, std::uint32_t n,
                      CheckContext& ctx) {
    std::vector<Apply> miter = u1;
    auto adj = adjoint_circuit(u2);
    miter.insert(miter.end(), adj.begin(), adj.end());
    PathSum m = of_unitary_circuit(miter, n, ctx.build_options());
    ctx.note("miter", m);
    Verdict v = verdict_of_miter(m, n, false);
    if (v.kind != VerdictKind::Inconclusive) {
        return v;
    }
    PathSum a = of_unitary_circuit(u1, n, ctx.build_options());
    PathSum b = of_unitary_circuit(u2, n, ctx.build_options());
    ctx.note("left", a);
    ctx.note("right", b);
    if (equal_syntactic(a, b, true)) {
        return Verdict::equivalent();
    }
    return v;
}

Verdict check_unitary(const std::vector<Apply>& u1, const std::vector<Apply>& u2, std::uint32_t n) {
    CheckContext ctx;
    return check_unitary(u1, u2, n, ctx);
}

// ---- alignment ---------------------------------------------------------

AlignedPair pad_ancillas(const IUMDecomposition& d1, const IUMDecomposition& d2) {
    auto split = [](const IUMDecomposition& d, std::vector<WireId>& prim, std::vector<WireId>& anc,
                    std::vector<WireId>& kept) {
        for (WireId w = 0; w < d.n_qubits; ++w) {
            (d.init_set.contains(w) ? anc : prim).push_back(w);
            if (!d.discarded.contains(w)) {
                kept.push_back(w);
            }
        }
    };
    std::vector<WireId> p1, a1, k1, p2, a2, k2;
    split(d1, p1, a1, k1);
    split(d2, p2, a2, k2);
    if (p1.size() != p2.size()) {
        throw ArityMismatch("circuits have " + std::to_string(p1.size()) + " and " + std::to_string(p2.size()) +
                            " primary inputs");
    }
    if (k1.size() != k2.size()) {
        throw ArityMismatch("circuits keep " + std::to_string(k1.size()) + " and " + std::to_string(k2.size()) +
                            " output wires");
    }
    AlignedPair p;
    p.n_primary = static_cast<std::uint32_t>(p1.size());
    p.n = static_cast<std::uint32_t>(p1.size() + a1.size() + a2.size());
    p.map1.assign(d1.n_qubits, 0);
    p.map2.assign(d2.n_qubits, 0);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        p.map1[p1[i]] = static_cast<WireId>(i);
        p.map2[p2[i]] = static_cast<WireId>(i);
    }
    const auto base1 = static_cast<WireId>(p1.size()), base2 = static_cast<WireId>(p1.size() + a1.size());
    for (std::size_t i = 0; i < a1.size(); ++i) {
        p.map1[a1[i]] = base1 + static_cast<WireId>(i);
    }
    for (std::size_t i = 0; i < a2.size(); ++i) {
        p.map2[a2[i]] = base2 + static_cast<WireId>(i);
    }

    auto embed = [](const std::vector<Apply>& u, const std::vector<WireId>& map) {
        std::vector<Apply> out;
        out.reserve(u.size());
        for (const auto& a : u) {
            Apply b = a;
            for (auto& w : b.controls) {
                w = map[w];
            }
            for (auto& w : b.targets) {
                w = map[w];
            }
            out.push_back(std::move(b));
        }
        return out;
    };
    p.u1 = embed(d1.unitary, p.map1);
    p.u2 = embed(d2.unitary, p.map2);

    for (WireId w = base1; w < p.n; ++w) {
        p.init1.insert(w);
        p.init2.insert(w);
    }
    for (auto w : d1.discarded) {
        p.discard1.insert(p.map1[w]);
    }
    for (auto w : d2.discarded) {
        p.discard2.insert(p.map2[w]);
    }
    for (WireId w = base2; w < p.n; ++w) {
        p.discard1.insert(w);
    }
    for (WireId w = base1; w < base2; ++w) {
        p.discard2.insert(w);
    }
    auto m1 = d1.measured_wires(), m2 = d2.measured_wires();
    for (auto w : k1) {
        p.kept1.push_back(p.map1[w]);
        p.kept_measured1.push_back(m1.contains(w));
    }
    for (auto w : k2) {
        p.kept2.push_back(p.map2[w]);
        p.kept_measured2.push_back(m2.contains(w));
    }
    return p;
}

bool compare_im_blocks(const AlignedPair& p) {
    return p.init1 == p.init2 && p.kept_measured1 == p.kept_measured2;
}

// ---- partial check -----------------------------------------------------

namespace {

// K2^dag K1 for two kept factors over the same inputs and zeroed set.
PathSum kept_miter(const PathSum& k1, const PathSum& k2) {
    const Var n = k1.n_in;
    PathSum m;
    m.n_in = n;
    m.zeroed = k1.zeroed;
    Var next = n;
    std::map<Var, Var> r1, r2;
    for (auto y : k1.path) {
        r1[y] = next++;
    }
    for (auto y : k2.path) {
        r2[y] = next++;
    }
    std::vector<Var> xp(n);
    for (Var i = 0; i < n; ++i) {
        if (!k1.zeroed.contains(i)) {
            xp[i] = next++;
        }
    }
    auto f1 = [&](Var v) { return v < n ? v : r1.at(v); };
    auto f2 = [&](Var v) { return v < n ? xp[v] : r2.at(v); };
    for (const auto& [y, z] : r1) {
        m.path.insert(z);
    }
    for (const auto& [y, z] : r2) {
        m.path.insert(z);
    }
    for (Var i = 0; i < n; ++i) {
        if (!k1.zeroed.contains(i)) {
            m.path.insert(xp[i]);
            m.outputs.push_back(BoolPoly::var(xp[i]));
        } else {
            m.outputs.push_back(BoolPoly{});
        }
    }
    m.phase = k1.phase.rename(f1);
    m.phase -= k2.phase.rename(f2);
    for (std::size_t j = 0; j < k1.outputs.size(); ++j) {
        Var z = next++;
        m.path.insert(z);
        BoolPoly d = k1.outputs[j].rename(f1) ^ k2.outputs[j].rename(f2);
        for (const auto& mono : d.terms()) {
            m.phase.add(monomial_union(mono, {z}), Dyadic::integer(1));
        }
    }
    m.next_var = next;
    m.scale = k1.scale + k2.scale + 2 * static_cast<int>(k1.outputs.size());
    return m;
}

struct Side {
    std::optional<PathSum> kept;
    Verdict failure;
};

Side kept_factor(const std::vector<Apply>& u, const AlignedPair& p, const std::set<WireId>& init,
                 const std::set<WireId>& discard, const std::vector<WireId>& kept_order, const std::string& name,
                 CheckContext& ctx) {
    PathSum ps = of_unitary_circuit(u, p.n, ctx.build_options());
    ps = project(std::move(ps), std::set<Var>(init.begin(), init.end()));
    reduce_in_place(ps, ctx.hooks());
    ctx.note(name + " projected", ps);
    auto sep = separate(ps, std::set<std::size_t>(discard.begin(), discard.end()), ctx.hooks());
    if (!sep) {
        ctx.note(name + ": kept and discarded outputs share paths");
        return {std::nullopt, Verdict::inconclusive(StallReason::SeparationFailed)};
    }
    if (!sep->residual_ok) {
        ctx.note(name + ": discarded factor is not input independent");
        return {std::nullopt, Verdict::inconclusive(StallReason::ResidualNotPure)};
    }
    // separate() keeps outputs in register order; realign to kept_order
    std::vector<WireId> sorted = kept_order;
    std::sort(sorted.begin(), sorted.end());
    PathSum k = std::move(sep->kept);
    std::vector<BoolPoly> outs;
    for (auto w : kept_order) {
        auto pos = std::lower_bound(sorted.begin(), sorted.end(), w) - sorted.begin();
        outs.push_back(k.outputs[static_cast<std::size_t>(pos)]);
    }
    k.outputs = std::move(outs);
    ctx.note(name + " kept", k);
    return {std::move(k), {}};
}

}  // namespace

Verdict check_partial(const AlignedPair& p, CheckContext& ctx) {
    Side s1 = kept_factor(p.u1, p, p.init1, p.discard1, p.kept1, "first", ctx);
    if (!s1.kept) {
        return s1.failure;
    }
    Side s2 = kept_factor(p.u2, p, p.init2, p.discard2, p.kept2, "second", ctx);
    if (!s2.kept) {
        return s2.failure;
    }
    const PathSum& k1 = *s1.kept;
    const PathSum& k2 = *s2.kept;
    if (equal_syntactic(k1, k2, true)) {
        return Verdict::equivalent();
    }
    bool measured = std::find(p.kept_measured1.begin(), p.kept_measured1.end(), true) != p.kept_measured1.end();
    PathSum m = kept_miter(k1, k2);
    reduce_in_place(m, ctx.hooks());
    ctx.note("kept miter", m);
    Verdict v = verdict_of_miter(m, p.n_primary, measured);
    if (v.kind == VerdictKind::Inconclusive && measured) {
        if (auto w = classical_difference(k1, k2)) {
            const std::uint64_t mask =
                p.n_primary >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.n_primary) - 1;
            w->input &= mask;
            return Verdict::not_equivalent(*w);
        }
    }
    return v;
}

// ---- pipeline ----------------------------------------------------------

CheckResult check_hybrid(const HybridCircuit& c1, const HybridCircuit& c2, const CheckOptions& opt) {
    const double start = now_ms();
    CheckContext ctx(opt);
    CheckResult res;
    auto finish = [&](Verdict v) {
        res.verdict = std::move(v);
        res.metrics.wall_ms = now_ms() - start;
        res.metrics.path_var_peak = ctx.stats().path_peak;
        res.metrics.rule_firings = ctx.stats().firings();
        res.explanation = ctx.log();
        return res;
    };
    try {
        require_well_formed(c1);
        require_well_formed(c2);
        res.cls = classify(c1, c2);
        HybridCircuit n1 = expand_controlled_hadamard(deferred_measurement(c1));
        HybridCircuit n2 = expand_controlled_hadamard(deferred_measurement(c2));
        IUMDecomposition d1 = decompose_ium(n1), d2 = decompose_ium(n2);

        // measuring a wire that is then traced out changes nothing
        auto kept_measured = [](const IUMDecomposition& d) {
            std::set<WireId> s;
            for (auto w : d.measured_wires()) {
                if (!d.discarded.contains(w)) {
                    s.insert(w);
                }
            }
            return s;
        };
        const auto km1 = kept_measured(d1), km2 = kept_measured(d2);
        const bool same_shape = d1.n_qubits == d2.n_qubits && d1.init_set == d2.init_set &&
                                d1.discarded == d2.discarded && km1 == km2;

        if (opt.structural_shortcut && same_shape && d1.unitary == d2.unitary) {
            ctx.note("normal forms are identical");
            return finish(Verdict::equivalent());
        }
        if (same_shape) {
            Verdict v = check_unitary(d1.unitary, d2.unitary, d1.n_qubits, ctx);
            bool plain = d1.init_set.empty() && d1.discarded.empty() && km1.empty();
            if (v.kind == VerdictKind::Equivalent || plain) {
                return finish(v);
            }
            ctx.note(std::string("full-register miter: ") + to_string(v.kind) + "; trying partial check");
        }

        AlignedPair p = pad_ancillas(d1, d2);
        if (!compare_im_blocks(p)) {
            return finish(Verdict::inconclusive(StallReason::BlockMismatch,
                                                "kept wires are measured in one circuit only"));
        }
        return finish(check_partial(p, ctx));
    } catch (const Timeout&) {
        return finish(Verdict::inconclusive(StallReason::Timeout));
    } catch (const ArityMismatch& e) {
        return finish(Verdict::error(std::string("interface mismatch: ") + e.what()));
    } catch (const std::exception& e) {
        return finish(Verdict::error(e.what()));
    }
}

}  // namespace hqec
