// SPDX-License-Identifier: Apache-2.0

#include "hqec/defer.hpp"

#include <algorithm>

namespace hqec {

Instruction mc_rewrite(const Instruction& ins, MeasBinding b) {
    if (const auto* cc = std::get_if<ClassicallyControlled>(&ins)) {
        auto it = std::find(cc->bits.begin(), cc->bits.end(), b.c);
        if (it == cc->bits.end()) {
            return ins;
        }
        ClassicallyControlled out = *cc;
        out.bits.erase(out.bits.begin() + (it - cc->bits.begin()));
        out.inner.controls.push_back(b.q);
        if (out.bits.empty()) {
            return out.inner;
        }
        return out;
    }
    if (const auto* nb = std::get_if<NotBit>(&ins); nb && nb->c == b.c) {
        return Apply{Gate::x(), {}, {b.q}};
    }
    return ins;
}

HybridCircuit push_inits(const HybridCircuit& c) {
    HybridCircuit out = c;
    std::stable_partition(out.body.begin(), out.body.end(),
                          [](const Instruction& i) { return std::holds_alternative<Init>(i); });
    return out;
}

HybridCircuit defer_measures(const HybridCircuit& c) {
    HybridCircuit out = c;
    out.body.clear();
    std::vector<MeasBinding> seen;
    std::vector<Instruction> measures;
    for (const auto& ins : c.body) {
        if (const auto* m = std::get_if<Measure>(&ins)) {
            seen.push_back({m->c, m->q});
            measures.push_back(ins);
            continue;
        }
        Instruction r = ins;
        for (const auto& b : seen) {
            r = mc_rewrite(r, b);
        }
        out.body.push_back(std::move(r));
    }

    // What still reads a classical bit precedes that bit's measurement (or
    // the bit is never measured), so the bit holds a constant there.
    std::vector<bool> value(c.n_cbits, false);
    std::vector<Instruction> folded;
    for (auto& ins : out.body) {
        if (const auto* nb = std::get_if<NotBit>(&ins)) {
            value[nb->c] = !value[nb->c];
        } else if (const auto* cc = std::get_if<ClassicallyControlled>(&ins)) {
            if (std::all_of(cc->bits.begin(), cc->bits.end(), [&](auto b) { return value[b]; })) {
                folded.emplace_back(cc->inner);
            }
        } else {
            folded.push_back(std::move(ins));
        }
    }
    folded.insert(folded.end(), measures.begin(), measures.end());
    out.body = std::move(folded);
    return out;
}

HybridCircuit deferred_measurement(const HybridCircuit& c) {
    return defer_measures(push_inits(c));
}

}  // namespace hqec
