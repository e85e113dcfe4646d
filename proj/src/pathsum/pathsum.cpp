// SPDX-License-Identifier: Apache-2.0

#include "hqec/pathsum.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hqec/errors.hpp"

namespace hqec {

// ---- PhasePoly ---------------------------------------------------------

Dyadic PhasePoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Dyadic{} : it->second;
}

bool PhasePoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

bool PhasePoly::contains(Var v) const {
    return std::any_of(terms_.begin(), terms_.end(), [v](const auto& t) { return monomial_contains(t.first, v); });
}

void PhasePoly::add(const Monomial& m, Dyadic c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
    for (const auto& [m, c] : o.terms_) {
        add(m, c);
    }
    return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
    for (const auto& [m, c] : o.terms_) {
        add(m, -c);
    }
    return *this;
}

void PhasePoly::add_lifted(const BoolPoly& b, Dyadic c) {
    if (c.is_zero()) {
        return;
    }
    // lift(a xor m) = lift(a) + m - 2*m*lift(a); the doubling drives
    // coefficients to 0 mod 2, which bounds the expansion.
    PhasePoly acc;
    for (const auto& m : b.terms()) {
        PhasePoly next = acc;
        next.add(m, c);
        for (const auto& [am, ac] : acc.terms_) {
            next.add(monomial_union(m, am), ac * -2);
        }
        acc = std::move(next);
    }
    *this += acc;
}

PhasePoly lift(const BoolPoly& b) {
    PhasePoly p;
    p.add_lifted(b, Dyadic::integer(1));
    return p;
}

PhasePoly PhasePoly::substitute(Var v, const BoolPoly& p) const {
    PhasePoly out;
    for (const auto& [m, c] : terms_) {
        if (!monomial_contains(m, v)) {
            out.add(m, c);
            continue;
        }
        Monomial rest = monomial_without(m, v);
        PhasePoly part;
        part.add_lifted(p, c);
        for (const auto& [pm, pc] : part.terms_) {
            out.add(monomial_union(rest, pm), pc);
        }
    }
    return out;
}

PhasePoly PhasePoly::rename(const std::function<Var(Var)>& f) const {
    PhasePoly out;
    for (const auto& [m, c] : terms_) {
        Monomial r;
        r.reserve(m.size());
        for (auto v : m) {
            r.push_back(f(v));
        }
        std::sort(r.begin(), r.end());
        out.add(r, c);
    }
    return out;
}

Dyadic PhasePoly::eval(const std::function<bool(Var)>& value) const {
    Dyadic acc;
    for (const auto& [m, c] : terms_) {
        if (std::all_of(m.begin(), m.end(), value)) {
            acc += c;
        }
    }
    return acc;
}

std::string PhasePoly::str(const std::function<std::string(Var)>& name) const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) {
            out += " + ";
        }
        first = false;
        bool unit = c == Dyadic::integer(1);
        if (!unit || m.empty()) {
            out += c.str();
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            out += (i || !unit ? "·" : "") + name(m[i]);
        }
    }
    return out;
}

// ---- PathSum -----------------------------------------------------------

Var PathSum::fresh() {
    next_var = std::max<Var>(next_var, n_in);
    return next_var++;
}

std::string PathSum::str() const {
    auto name = [this](Var v) { return (v < n_in ? "x" : "y") + std::to_string(v); };
    std::ostringstream os;
    os << "2^{-" << scale << "/2}";
    if (!path.empty()) {
        os << " Σ_{";
        bool first = true;
        for (auto y : path) {
            os << (first ? "" : ",") << name(y);
            first = false;
        }
        os << "}";
    }
    os << " e^{iπ(" << phase.str(name) << ")} |";
    for (std::size_t j = 0; j < outputs.size(); ++j) {
        os << (j ? ", " : "") << outputs[j].str(name);
    }
    os << "⟩";
    return os.str();
}

PathSum identity(std::uint32_t n) {
    PathSum ps;
    ps.n_in = n;
    ps.next_var = n;
    for (Var i = 0; i < n; ++i) {
        ps.outputs.push_back(BoolPoly::var(i));
    }
    return ps;
}

void apply_gate_in_place(PathSum& ps, const Apply& ins) {
    auto check = [&](WireId w) {
        if (w >= ps.outputs.size()) {
            throw WireOutOfRange("wire q" + std::to_string(w) + " outside a " + std::to_string(ps.outputs.size()) +
                                 "-wire sum");
        }
    };
    for (auto w : ins.controls) {
        check(w);
    }
    for (auto w : ins.targets) {
        check(w);
    }
    if (ins.gate.kind == GateKind::H && !ins.controls.empty()) {
        throw ControlledHadamard();
    }
    BoolPoly g = BoolPoly::one();
    for (auto w : ins.controls) {
        g = g * ps.outputs[w];
    }
    for (auto t : ins.targets) {
        switch (ins.gate.kind) {
        case GateKind::X:
            ps.outputs[t] ^= g;
            break;
        case GateKind::RZ:
            ps.phase.add_lifted(g * ps.outputs[t], ins.gate.angle.coefficient());
            break;
        case GateKind::Ph:
            ps.phase.add_lifted(g, ins.gate.angle.coefficient());
            break;
        case GateKind::H: {
            Var y = ps.fresh();
            ps.path.insert(y);
            for (const auto& m : ps.outputs[t].terms()) {
                ps.phase.add(monomial_union(m, {y}), Dyadic::integer(1));
            }
            ps.outputs[t] = BoolPoly::var(y);
            ps.scale += 1;
            break;
        }
        }
    }
}

PathSum apply_gate(PathSum ps, const Apply& ins) {
    apply_gate_in_place(ps, ins);
    return ps;
}

const char* to_string(Rule r) {
    switch (r) {
    case Rule::Elim:
        return "elim";
    case Rule::HH:
        return "hh";
    case Rule::Omega:
        return "omega";
    }
    return "?";
}

ReduceStats& ReduceStats::operator+=(const ReduceStats& o) {
    elim += o.elim;
    hh += o.hh;
    omega += o.omega;
    path_peak = std::max(path_peak, o.path_peak);
    return *this;
}

namespace {

struct Quotient {
    bool has_const = false;
    Dyadic const_coeff;
    // non-constant quotient monomials with their coefficients
    std::vector<std::pair<Monomial, Dyadic>> terms;
};

std::map<Var, Quotient> quotients(const PathSum& ps) {
    std::map<Var, Quotient> q;
    for (const auto& [m, c] : ps.phase.terms()) {
        for (auto v : m) {
            if (!ps.path.contains(v)) {
                continue;
            }
            auto& qv = q[v];
            Monomial rest = monomial_without(m, v);
            if (rest.empty()) {
                qv.has_const = true;
                qv.const_coeff = c;
            } else {
                qv.terms.emplace_back(std::move(rest), c);
            }
        }
    }
    return q;
}

void drop_var_terms(PathSum& ps, Var y) {
    PhasePoly kept;
    for (const auto& [m, c] : ps.phase.terms()) {
        if (!monomial_contains(m, y)) {
            kept.add(m, c);
        }
    }
    ps.phase = std::move(kept);
}

// Tries the rules on y in order Elim, HH, omega; true if one fired.
bool try_rules(PathSum& ps, Var y, const std::map<Var, Quotient>& qs, Rule& fired) {
    auto it = qs.find(y);
    if (it == qs.end()) {
        ps.path.erase(y);
        ps.scale -= 2;
        fired = Rule::Elim;
        return true;
    }
    const Quotient& q = it->second;
    const Dyadic one = Dyadic::integer(1);
    bool unit_terms = std::all_of(q.terms.begin(), q.terms.end(), [&](const auto& t) { return t.second == one; });
    if (!unit_terms) {
        return false;
    }

    if (!q.has_const || q.const_coeff == one) {
        std::optional<Var> pick;
        for (std::size_t i = 0; i < q.terms.size(); ++i) {
            const Monomial& m = q.terms[i].first;
            if (m.size() != 1 || !ps.path.contains(m[0]) || m[0] == y) {
                continue;
            }
            Var cand = m[0];
            bool alone = true;
            for (std::size_t k = 0; k < q.terms.size() && alone; ++k) {
                alone = k == i || !monomial_contains(q.terms[k].first, cand);
            }
            if (alone && (!pick || cand < *pick)) {
                pick = cand;
            }
        }
        if (pick) {
            BoolPoly sub = q.has_const ? BoolPoly::one() : BoolPoly{};
            for (const auto& [m, c] : q.terms) {
                if (m != Monomial{*pick}) {
                    sub.toggle(m);
                }
            }
            drop_var_terms(ps, y);
            ps.phase = ps.phase.substitute(*pick, sub);
            for (auto& f : ps.outputs) {
                if (f.contains(*pick)) {
                    f = f.substitute(*pick, sub);
                }
            }
            ps.path.erase(y);
            ps.path.erase(*pick);
            ps.scale -= 2;
            fired = Rule::HH;
            return true;
        }
    }

    const Dyadic half = Dyadic::fraction(1, 1), three_halves = Dyadic::fraction(3, 1);
    if (q.has_const && (q.const_coeff == half || q.const_coeff == three_halves)) {
        BoolPoly rest;
        for (const auto& [m, c] : q.terms) {
            rest.toggle(m);
        }
        bool plus = q.const_coeff == half;
        drop_var_terms(ps, y);
        ps.phase.add({}, plus ? Dyadic::fraction(1, 2) : Dyadic::fraction(-1, 2));
        ps.phase.add_lifted(rest, plus ? Dyadic::fraction(-1, 1) : half);
        ps.path.erase(y);
        ps.scale -= 1;
        fired = Rule::Omega;
        return true;
    }
    return false;
}

}  // namespace

void reduce_in_place(PathSum& ps, const ReduceHooks& hooks) {
    for (;;) {
        if (hooks.stats) {
            hooks.stats->path_peak = std::max(hooks.stats->path_peak, ps.path.size());
        }
        if (hooks.expired && hooks.expired()) {
            throw Timeout();
        }
        std::set<Var> in_outputs;
        for (const auto& f : ps.outputs) {
            for (const auto& m : f.terms()) {
                in_outputs.insert(m.begin(), m.end());
            }
        }
        auto qs = quotients(ps);
        bool any = false;
        std::vector<Var> candidates(ps.path.begin(), ps.path.end());
        for (auto y : candidates) {
            if (in_outputs.contains(y)) {
                continue;
            }
            std::optional<PathSum> before;
            if (hooks.observer) {
                before = ps;
            }
            Rule r{};
            if (try_rules(ps, y, qs, r)) {
                if (hooks.stats) {
                    (r == Rule::Elim ? hooks.stats->elim : r == Rule::HH ? hooks.stats->hh : hooks.stats->omega)++;
                }
                if (hooks.observer) {
                    hooks.observer(r, *before, ps);
                }
                any = true;
                break;
            }
        }
        if (!any) {
            return;
        }
    }
}

PathSum reduce(PathSum ps, const ReduceHooks& hooks) {
    reduce_in_place(ps, hooks);
    return ps;
}

PathSum of_unitary_circuit(const std::vector<Apply>& u, std::uint32_t n, const BuildOptions& opt) {
    PathSum ps = identity(n);
    std::size_t count = 0;
    for (const auto& a : u) {
        apply_gate_in_place(ps, a);
        if (opt.hooks.stats) {
            opt.hooks.stats->path_peak = std::max(opt.hooks.stats->path_peak, ps.path.size());
        }
        if (opt.reduce_every != 0 && ++count % opt.reduce_every == 0) {
            reduce_in_place(ps, opt.hooks);
        }
    }
    if (opt.reduce_every != 0) {
        reduce_in_place(ps, opt.hooks);
    }
    return ps;
}

std::vector<Apply> adjoint_circuit(const std::vector<Apply>& u) {
    std::vector<Apply> out;
    out.reserve(u.size());
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
        out.push_back({it->gate.adjoint(), it->controls, it->targets});
    }
    return out;
}

PathSum project(PathSum ps, const std::set<Var>& zeroed) {
    for (auto v : zeroed) {
        if (v >= ps.n_in) {
            throw WireOutOfRange("projected input x" + std::to_string(v) + " does not exist");
        }
        ps.phase = ps.phase.substitute(v, BoolPoly{});
        for (auto& f : ps.outputs) {
            if (f.contains(v)) {
                f = f.substitute(v, BoolPoly{});
            }
        }
        ps.zeroed.insert(v);
    }
    return ps;
}

// ---- separation --------------------------------------------------------

namespace {

struct UnionFind {
    std::map<Var, Var> parent;
    Var find(Var v) {
        auto it = parent.find(v);
        if (it == parent.end()) {
            parent[v] = v;
            return v;
        }
        if (it->second == v) {
            return v;
        }
        Var r = find(it->second);
        parent[v] = r;
        return r;
    }
    void join(Var a, Var b) { parent[find(a)] = find(b); }
};

template <class Range>
void join_path_vars(UnionFind& uf, const PathSum& ps, const Range& vars) {
    std::optional<Var> first;
    for (auto v : vars) {
        if (!ps.path.contains(v)) {
            continue;
        }
        if (first) {
            uf.join(*first, v);
        } else {
            first = v;
            uf.find(v);
        }
    }
}

// A path variable y occurring only as a linear term of one discarded output
// f = y + g can be renamed y -> y + g, a bijection on paths, leaving f = y.
void absorb_discarded(PathSum& ps, const std::set<std::size_t>& discarded) {
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t j : discarded) {
            auto& f = ps.outputs[j];
            if (f.terms().size() < 2) {
                continue;
            }
            for (auto y : f.vars()) {
                if (!ps.path.contains(y) || !f.terms().contains(Monomial{y}) || ps.phase.contains(y)) {
                    continue;
                }
                bool linear = std::ranges::all_of(f.terms(), [&](const Monomial& m) {
                    return m == Monomial{y} || !monomial_contains(m, y);
                });
                bool alone = true;
                for (std::size_t k = 0; k < ps.outputs.size() && alone; ++k) {
                    alone = k == j || !ps.outputs[k].contains(y);
                }
                if (linear && alone) {
                    f = BoolPoly::var(y);
                    changed = true;
                    break;
                }
            }
        }
    }
}

}  // namespace

std::optional<SeparationResult> separate(const PathSum& input, const std::set<std::size_t>& discarded,
                                         const ReduceHooks& hooks) {
    if (discarded.empty()) {
        return SeparationResult{input, true, 0};
    }
    PathSum ps = input;
    absorb_discarded(ps, discarded);
    UnionFind uf;
    for (auto y : ps.path) {
        uf.find(y);
    }
    for (const auto& [m, c] : ps.phase.terms()) {
        join_path_vars(uf, ps, m);
    }
    for (const auto& f : ps.outputs) {
        join_path_vars(uf, ps, f.vars());
    }
    // side of each component: bit 1 = kept, bit 2 = discarded
    std::map<Var, int> side;
    for (std::size_t j = 0; j < ps.outputs.size(); ++j) {
        int s = discarded.contains(j) ? 2 : 1;
        for (auto v : ps.outputs[j].vars()) {
            if (ps.path.contains(v)) {
                side[uf.find(v)] |= s;
            }
        }
    }
    for (const auto& [root, s] : side) {
        if (s == 3) {
            return std::nullopt;
        }
    }
    auto in_d = [&](Var y) {
        auto it = side.find(uf.find(y));
        return it != side.end() && it->second == 2;
    };

    PathSum kept, disc;
    kept.n_in = disc.n_in = ps.n_in;
    kept.zeroed = disc.zeroed = ps.zeroed;
    kept.next_var = disc.next_var = ps.next_var;
    for (auto y : ps.path) {
        (in_d(y) ? disc : kept).path.insert(y);
    }
    for (const auto& [m, c] : ps.phase.terms()) {
        auto py = std::find_if(m.begin(), m.end(), [&](Var v) { return ps.path.contains(v); });
        bool d = py != m.end() && in_d(*py);
        (d ? disc : kept).phase.add(m, c);
    }
    for (std::size_t j = 0; j < ps.outputs.size(); ++j) {
        (discarded.contains(j) ? disc : kept).outputs.push_back(ps.outputs[j]);
    }

    // Overlap <D(x')|D(x)>: inputs x then x', copies y, y' of D's paths, and
    // one z per discarded output enforcing f(x,y) = f(x',y').
    const Var n = ps.n_in;
    PathSum ov;
    ov.n_in = 2 * n;
    std::map<Var, Var> left, right;
    Var next = 2 * n;
    for (auto y : disc.path) {
        left[y] = next++;
        right[y] = next++;
    }
    auto lname = [&](Var v) { return v < n ? v : left.at(v); };
    auto rname = [&](Var v) { return v < n ? v + n : right.at(v); };
    for (auto y : disc.path) {
        ov.path.insert(left[y]);
        ov.path.insert(right[y]);
    }
    ov.phase = disc.phase.rename(lname);
    ov.phase -= disc.phase.rename(rname);
    for (const auto& f : disc.outputs) {
        Var z = next++;
        ov.path.insert(z);
        BoolPoly diff = f.rename(lname) ^ f.rename(rname);
        for (const auto& m : diff.terms()) {
            ov.phase.add(monomial_union(m, {z}), Dyadic::integer(1));
        }
    }
    ov.next_var = next;
    ov.scale = 2 * static_cast<int>(disc.outputs.size());
    reduce_in_place(ov, hooks);

    SeparationResult res;
    res.residual_ok = ov.path.empty() && ov.phase.empty() && ov.scale % 2 == 0;
    res.discarded_scale = res.residual_ok ? -ov.scale / 2 : 0;
    kept.scale = ps.scale - res.discarded_scale;
    res.kept = std::move(kept);
    return res;
}

// ---- comparison --------------------------------------------------------

namespace {

PathSum canonical_names(const PathSum& ps) {
    constexpr Var base = Var{1} << 30;
    std::map<Var, Var> ren;
    auto visit = [&](Var v) {
        if (ps.path.contains(v) && !ren.contains(v)) {
            ren.emplace(v, base + static_cast<Var>(ren.size()));
        }
    };
    for (const auto& f : ps.outputs) {
        for (const auto& m : f.terms()) {
            std::for_each(m.begin(), m.end(), visit);
        }
    }
    for (const auto& [m, c] : ps.phase.terms()) {
        std::for_each(m.begin(), m.end(), visit);
    }
    std::for_each(ps.path.begin(), ps.path.end(), visit);

    auto f = [&](Var v) { return v < ps.n_in ? v : ren.at(v); };
    PathSum out;
    out.n_in = ps.n_in;
    out.zeroed = ps.zeroed;
    out.scale = ps.scale;
    for (auto y : ps.path) {
        out.path.insert(f(y));
    }
    out.next_var = base + static_cast<Var>(ren.size());
    out.phase = ps.phase.rename(f);
    for (const auto& o : ps.outputs) {
        out.outputs.push_back(o.rename(f));
    }
    return out;
}

}  // namespace

bool equal_syntactic(const PathSum& a, const PathSum& b, bool up_to_global_phase) {
    if (a.n_in != b.n_in || a.zeroed != b.zeroed || a.scale != b.scale || a.outputs.size() != b.outputs.size() ||
        a.path.size() != b.path.size()) {
        return false;
    }
    PathSum ca = canonical_names(a), cb = canonical_names(b);
    if (ca.outputs != cb.outputs) {
        return false;
    }
    PhasePoly diff = ca.phase;
    diff -= cb.phase;
    return up_to_global_phase ? diff.is_constant() : diff.empty();
}

bool is_identity(const PathSum& ps, bool up_to_global_phase) {
    if (!ps.path.empty() || ps.scale != 0 || ps.outputs.size() != ps.n_in) {
        return false;
    }
    for (Var j = 0; j < ps.n_in; ++j) {
        BoolPoly want = ps.zeroed.contains(j) ? BoolPoly{} : BoolPoly::var(j);
        if (ps.outputs[j] != want) {
            return false;
        }
    }
    return up_to_global_phase ? ps.phase.is_constant() : ps.phase.empty();
}

}  // namespace hqec
