// SPDX-License-Identifier: Apache-2.0

#include "hqec/generators.hpp"

#include <algorithm>

#include "hqec/errors.hpp"

namespace hqec {

namespace {

Apply H(WireId q) { return {Gate::h(), {}, {q}}; }
Apply X(WireId q) { return {Gate::x(), {}, {q}}; }
Apply Z(WireId q) { return {Gate::rz(1, 1), {}, {q}}; }
Apply CX(WireId c, WireId t) { return {Gate::x(), {c}, {t}}; }
Apply CZ(WireId c, WireId t) { return {Gate::rz(1, 1), {c}, {t}}; }

}  // namespace

std::vector<Apply> qft(std::uint32_t n) {
    std::vector<Apply> u;
    for (std::uint32_t j = 0; j < n; ++j) {
        WireId a = n - 1 - j;
        u.push_back(H(a));
        for (std::uint32_t l = j + 1; l < n; ++l) {
            u.push_back({Gate::rz(1, static_cast<int>(l - j + 1)), {n - 1 - l}, {a}});
        }
    }
    for (std::uint32_t i = 0; i < n / 2; ++i) {
        WireId b = n - 1 - i;
        u.push_back(CX(i, b));
        u.push_back(CX(b, i));
        u.push_back(CX(i, b));
    }
    return u;
}

HybridCircuit unitary_circuit(const std::vector<Apply>& u, std::uint32_t n) {
    HybridCircuit c;
    c.n_qubits = n;
    for (const auto& a : u) {
        c.body.emplace_back(a);
    }
    return c;
}

HybridCircuit qpe(std::uint32_t n, bool dynamic) {
    HybridCircuit c;
    c.n_qubits = n + 1;
    c.n_cbits = n;
    const WireId eig = n;
    for (WireId j = 0; j < n; ++j) {
        c.body.emplace_back(Init{j});
    }
    for (WireId j = 0; j < n; ++j) {
        c.body.emplace_back(H(j));
    }
    for (WireId j = 0; j < n; ++j) {
        c.body.emplace_back(Apply{Gate::rz(1, static_cast<int>(n - j)), {j}, {eig}});
    }
    // semi-classical inverse transform, most significant wire first
    for (std::uint32_t s = 0; s < n; ++s) {
        WireId j = n - 1 - s;
        for (WireId l = n - 1; l > j; --l) {
            Apply rot{Gate::rz(-1, static_cast<int>(l - j + 1)), {}, {j}};
            if (dynamic) {
                c.body.emplace_back(ClassicallyControlled{{l}, rot});
            } else {
                rot.controls = {l};
                c.body.emplace_back(rot);
            }
        }
        c.body.emplace_back(H(j));
        if (dynamic) {
            c.body.emplace_back(Measure{j, j});
        }
    }
    if (!dynamic) {
        for (std::uint32_t s = 0; s < n; ++s) {
            c.body.emplace_back(Measure{n - 1 - s, n - 1 - s});
        }
    }
    return c;
}

HybridCircuit bell() {
    return unitary_circuit({H(0), CX(0, 1)}, 2);
}

HybridCircuit ghz(std::uint32_t n) {
    std::vector<Apply> u{H(0)};
    for (WireId w = 1; w < n; ++w) {
        u.push_back(CX(w - 1, w));
    }
    return unitary_circuit(u, n);
}

HybridCircuit teleportify(const HybridCircuit& c, const std::vector<WireId>& wires, bool dynamic) {
    HybridCircuit out = c;
    for (WireId w : wires) {
        if (w >= out.n_qubits) {
            throw Error("teleport wire q" + std::to_string(w) + " out of range");
        }
        const WireId a1 = out.n_qubits, a2 = out.n_qubits + 1;
        const ClassicalBitId cw = out.n_cbits, ca = out.n_cbits + 1;
        out.n_qubits += 2;
        out.n_cbits += 2;

        std::vector<Instruction> body;
        body.emplace_back(Init{a1});
        body.emplace_back(Init{a2});
        body.insert(body.end(), out.body.begin(), out.body.end());

        // where the gadget goes: before w's measurement, else at the end;
        // the deferred form keeps the measurement block trailing
        auto is_meas_of_w = [&](const Instruction& ins) {
            const auto* m = std::get_if<Measure>(&ins);
            return m && m->q == w;
        };
        auto at = std::find_if(body.begin(), body.end(), is_meas_of_w);
        if (at != body.end()) {
            std::get<Measure>(*at).q = a2;
        }
        if (!dynamic) {
            auto tail = body.end();
            while (tail != body.begin() && std::holds_alternative<Measure>(*(tail - 1))) {
                --tail;
            }
            at = tail;
        }
        std::vector<Instruction> gadget{H(a1), CX(a1, a2), CX(w, a1), H(w)};
        if (dynamic) {
            gadget.emplace_back(Measure{a1, ca});
            gadget.emplace_back(Measure{w, cw});
            gadget.emplace_back(ClassicallyControlled{{ca}, X(a2)});
            gadget.emplace_back(ClassicallyControlled{{cw}, Z(a2)});
        } else {
            gadget.emplace_back(CX(a1, a2));
            gadget.emplace_back(CZ(w, a2));
        }
        at = body.insert(at, gadget.begin(), gadget.end());
        if (!dynamic) {
            body.emplace_back(Measure{a1, ca});
            body.emplace_back(Measure{w, cw});
        }
        out.body = std::move(body);
        if (out.discards.contains(w)) {
            out.discards.insert(a2);
        }
        out.discards.insert(w);
        out.discards.insert(a1);
    }
    return out;
}

}  // namespace hqec
