// SPDX-License-Identifier: Apache-2.0

#include "hqec/circuit.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hqec/errors.hpp"

namespace hqec {

Gate Gate::adjoint() const {
    if (!has_angle()) {
        return *this;
    }
    return {kind, angle.negated()};
}

std::string Gate::str() const {
    switch (kind) {
    case GateKind::X:
        return "X";
    case GateKind::H:
        return "H";
    case GateKind::RZ:
        return "RZ(" + std::to_string(angle.multiplier) + "," + std::to_string(angle.denom_exp) + ")";
    case GateKind::Ph:
        return "Ph(" + std::to_string(angle.multiplier) + "," + std::to_string(angle.denom_exp) + ")";
    }
    return "?";
}

namespace {

std::string wire_list(const std::vector<WireId>& ws) {
    std::string out;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        out += (i ? "," : "") + std::string("q") + std::to_string(ws[i]);
    }
    return out;
}

std::string apply_str(const Apply& a) {
    std::string s = a.gate.str();
    if (!a.controls.empty()) {
        s += " [" + wire_list(a.controls) + "]";
    }
    return s + " " + wire_list(a.targets);
}

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

std::string to_string(const Instruction& ins) {
    return std::visit(overloaded{
                          [](const Apply& a) { return apply_str(a); },
                          [](const ClassicallyControlled& cc) {
                              std::string s = "if";
                              for (auto b : cc.bits) {
                                  s += " c" + std::to_string(b);
                              }
                              return s + " " + apply_str(cc.inner);
                          },
                          [](const Measure& m) {
                              return "measure q" + std::to_string(m.q) + " -> c" + std::to_string(m.c);
                          },
                          [](const Init& i) { return "init q" + std::to_string(i.q); },
                          [](const NotBit& n) { return "not c" + std::to_string(n.c); },
                      },
                      ins);
}

std::string to_string(const HybridCircuit& c) {
    std::ostringstream os;
    os << "circuit " << c.n_qubits << "q " << c.n_cbits << "c";
    if (!c.discards.empty()) {
        os << " discard {";
        bool first = true;
        for (auto w : c.discards) {
            os << (first ? "" : ",") << "q" << w;
            first = false;
        }
        os << "}";
    }
    os << "\n";
    for (const auto& ins : c.body) {
        os << "  " << to_string(ins) << "\n";
    }
    return os.str();
}

std::vector<WireId> HybridCircuit::primary_inputs() const {
    std::vector<bool> inited(n_qubits, false);
    for (const auto& ins : body) {
        if (const auto* i = std::get_if<Init>(&ins); i && i->q < n_qubits) {
            inited[i->q] = true;
        }
    }
    std::vector<WireId> out;
    for (WireId w = 0; w < n_qubits; ++w) {
        if (!inited[w]) {
            out.push_back(w);
        }
    }
    return out;
}

std::vector<WireId> HybridCircuit::kept_outputs() const {
    std::vector<WireId> out;
    for (WireId w = 0; w < n_qubits; ++w) {
        if (!discards.contains(w)) {
            out.push_back(w);
        }
    }
    return out;
}

std::vector<WireId> wires_of(const Instruction& ins) {
    return std::visit(overloaded{
                          [](const Apply& a) {
                              std::vector<WireId> ws = a.controls;
                              ws.insert(ws.end(), a.targets.begin(), a.targets.end());
                              return ws;
                          },
                          [](const ClassicallyControlled& cc) {
                              std::vector<WireId> ws = cc.inner.controls;
                              ws.insert(ws.end(), cc.inner.targets.begin(), cc.inner.targets.end());
                              return ws;
                          },
                          [](const Measure& m) { return std::vector<WireId>{m.q}; },
                          [](const Init& i) { return std::vector<WireId>{i.q}; },
                          [](const NotBit&) { return std::vector<WireId>{}; },
                      },
                      ins);
}

std::vector<Violation> validate_well_formed(const HybridCircuit& c) {
    std::vector<Violation> out;
    auto bad = [&](std::size_t i, Constraint k, std::string msg) { out.push_back({i, k, std::move(msg)}); };

    std::vector<bool> measured(c.n_qubits, false), addressed(c.n_qubits, false), inited(c.n_qubits, false);
    std::vector<bool> written(c.n_cbits, false);

    auto check_apply = [&](std::size_t i, const Apply& a) {
        if (a.targets.empty()) {
            bad(i, Constraint::Structure, "gate without targets");
        }
        std::vector<WireId> ws = a.controls;
        ws.insert(ws.end(), a.targets.begin(), a.targets.end());
        std::sort(ws.begin(), ws.end());
        if (std::adjacent_find(ws.begin(), ws.end()) != ws.end()) {
            bad(i, Constraint::Structure, "controls and targets overlap");
        }
    };
    auto check_bit = [&](std::size_t i, ClassicalBitId b) {
        if (b >= c.n_cbits) {
            bad(i, Constraint::Structure, "classical bit c" + std::to_string(b) + " out of range");
            return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < c.body.size(); ++i) {
        const auto& ins = c.body[i];
        if (const auto* a = std::get_if<Apply>(&ins)) {
            check_apply(i, *a);
        } else if (const auto* cc = std::get_if<ClassicallyControlled>(&ins)) {
            check_apply(i, cc->inner);
            if (cc->bits.empty()) {
                bad(i, Constraint::Structure, "classical control without bits");
            }
            for (auto b : cc->bits) {
                check_bit(i, b);
            }
        } else if (const auto* nb = std::get_if<NotBit>(&ins)) {
            check_bit(i, nb->c);
        } else if (const auto* m = std::get_if<Measure>(&ins)) {
            if (check_bit(i, m->c)) {
                if (written[m->c]) {
                    bad(i, Constraint::SingleWrite, "c" + std::to_string(m->c) + " measured twice");
                }
                written[m->c] = true;
            }
        }

        bool is_init = std::holds_alternative<Init>(ins);
        for (auto w : wires_of(ins)) {
            if (w >= c.n_qubits) {
                bad(i, Constraint::Structure, "wire q" + std::to_string(w) + " out of range");
                continue;
            }
            if (measured[w]) {
                bad(i, Constraint::NoUseAfterMeasure, "q" + std::to_string(w) + " used after measurement");
            }
            if (is_init) {
                if (inited[w]) {
                    bad(i, Constraint::FreshInit, "q" + std::to_string(w) + " initialised twice");
                } else if (addressed[w]) {
                    bad(i, Constraint::FreshInit, "q" + std::to_string(w) + " used before its initialisation");
                }
                inited[w] = true;
            }
            addressed[w] = true;
        }
        if (const auto* m = std::get_if<Measure>(&ins); m && m->q < c.n_qubits) {
            measured[m->q] = true;
        }
    }
    for (auto w : c.discards) {
        if (w >= c.n_qubits) {
            bad(c.body.size(), Constraint::Structure, "discarded wire q" + std::to_string(w) + " out of range");
        }
    }
    return out;
}

bool is_well_formed(const HybridCircuit& c) {
    return validate_well_formed(c).empty();
}

void require_well_formed(const HybridCircuit& c) {
    auto v = validate_well_formed(c);
    if (!v.empty()) {
        throw Error("ill-formed circuit at instruction " + std::to_string(v.front().index) + ": " + v.front().message);
    }
}

std::size_t l_init(const HybridCircuit& c) {
    std::size_t non_init = 0, total = 0;
    for (const auto& ins : c.body) {
        if (std::holds_alternative<Init>(ins)) {
            total += non_init;
        } else {
            ++non_init;
        }
    }
    return total;
}

std::size_t e_meas(const HybridCircuit& c) {
    std::size_t non_meas = 0, total = 0;
    for (auto it = c.body.rbegin(); it != c.body.rend(); ++it) {
        if (std::holds_alternative<Measure>(*it)) {
            total += non_meas;
        } else {
            ++non_meas;
        }
    }
    return total;
}

IUMDecomposition decompose_ium(const HybridCircuit& c) {
    if (auto v = validate_well_formed(c); !v.empty()) {
        throw NotInNormalForm("ill-formed circuit: " + v.front().message);
    }
    if (l_init(c) != 0 || e_meas(c) != 0) {
        throw NotInNormalForm("inits must lead and measurements must trail; run deferred measurement first");
    }
    IUMDecomposition d;
    d.n_qubits = c.n_qubits;
    d.n_cbits = c.n_cbits;
    d.discarded = c.discards;
    for (const auto& ins : c.body) {
        if (const auto* i = std::get_if<Init>(&ins)) {
            d.init_set.insert(i->q);
        } else if (const auto* a = std::get_if<Apply>(&ins)) {
            d.unitary.push_back(*a);
        } else if (const auto* m = std::get_if<Measure>(&ins)) {
            d.measured.emplace_back(m->q, m->c);
        } else {
            throw NotInNormalForm("classical control remains: " + to_string(ins));
        }
    }
    return d;
}

HybridCircuit IUMDecomposition::reassemble() const {
    HybridCircuit c;
    c.n_qubits = n_qubits;
    c.n_cbits = n_cbits;
    c.discards = discarded;
    for (auto w : init_set) {
        c.body.emplace_back(Init{w});
    }
    for (const auto& a : unitary) {
        c.body.emplace_back(a);
    }
    for (auto [q, b] : measured) {
        c.body.emplace_back(Measure{q, b});
    }
    return c;
}

std::set<WireId> IUMDecomposition::measured_wires() const {
    std::set<WireId> out;
    for (auto [q, b] : measured) {
        out.insert(q);
    }
    return out;
}

const char* to_string(ChallengeClass k) {
    switch (k) {
    case ChallengeClass::DisFree:
        return "DisFree";
    case ChallengeClass::Mix:
        return "Mix";
    case ChallengeClass::Dis:
        return "Dis";
    }
    return "?";
}

ChallengeClass classify(const HybridCircuit& c1, const HybridCircuit& c2) {
    bool d1 = !c1.discards.empty(), d2 = !c2.discards.empty();
    if (d1 && d2) {
        return ChallengeClass::Dis;
    }
    return d1 || d2 ? ChallengeClass::Mix : ChallengeClass::DisFree;
}

std::vector<Apply> lower_controlled_hadamard(const Apply& a) {
    if (a.gate.kind != GateKind::H || a.controls.empty()) {
        return {a};
    }
    // H = S H T X T^dag H S^dag; conjugating only the X by the controls
    // leaves the uncontrolled branch exactly the identity.
    std::vector<Apply> out;
    for (auto t : a.targets) {
        out.push_back({Gate::rz(-1, 2), {}, {t}});
        out.push_back({Gate::h(), {}, {t}});
        out.push_back({Gate::rz(-1, 3), {}, {t}});
        out.push_back({Gate::x(), a.controls, {t}});
        out.push_back({Gate::rz(1, 3), {}, {t}});
        out.push_back({Gate::h(), {}, {t}});
        out.push_back({Gate::rz(1, 2), {}, {t}});
    }
    return out;
}

HybridCircuit expand_controlled_hadamard(const HybridCircuit& c) {
    HybridCircuit out = c;
    out.body.clear();
    for (const auto& ins : c.body) {
        if (const auto* a = std::get_if<Apply>(&ins)) {
            for (auto& g : lower_controlled_hadamard(*a)) {
                out.body.emplace_back(std::move(g));
            }
        } else if (const auto* cc = std::get_if<ClassicallyControlled>(&ins);
                   cc && cc->inner.gate.kind == GateKind::H && !cc->inner.controls.empty()) {
            // the conjugating gates cancel when the condition is false
            for (auto& g : lower_controlled_hadamard(cc->inner)) {
                if (g.controls.empty()) {
                    out.body.emplace_back(std::move(g));
                } else {
                    out.body.emplace_back(ClassicallyControlled{cc->bits, std::move(g)});
                }
            }
        } else {
            out.body.push_back(ins);
        }
    }
    return out;
}

}  // namespace hqec
