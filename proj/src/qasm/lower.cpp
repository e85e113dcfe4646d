// SPDX-License-Identifier: Apache-2.0

#include <functional>
#include <map>

#include "hqec/errors.hpp"
#include "hqec/qasm.hpp"

namespace hqec {

namespace {

struct Builtin {
    std::size_t n_params;
    std::size_t n_operands;
    std::function<std::vector<Apply>(const std::vector<DyadicAngle>&, const std::vector<WireId>&)> lower;
};

std::vector<Apply> one(Gate g, std::vector<WireId> controls, WireId t) {
    return {{g, std::move(controls), {t}}};
}

const std::map<std::string, Builtin>& builtins() {
    using P = const std::vector<DyadicAngle>&;
    using Q = const std::vector<WireId>&;
    static const std::map<std::string, Builtin> table = {
        {"id", {0, 1, [](P, Q) { return std::vector<Apply>{}; }}},
        {"x", {0, 1, [](P, Q q) { return one(Gate::x(), {}, q[0]); }}},
        {"h", {0, 1, [](P, Q q) { return one(Gate::h(), {}, q[0]); }}},
        {"z", {0, 1, [](P, Q q) { return one(Gate::rz(1, 1), {}, q[0]); }}},
        {"s", {0, 1, [](P, Q q) { return one(Gate::rz(1, 2), {}, q[0]); }}},
        {"sdg", {0, 1, [](P, Q q) { return one(Gate::rz(-1, 2), {}, q[0]); }}},
        {"t", {0, 1, [](P, Q q) { return one(Gate::rz(1, 3), {}, q[0]); }}},
        {"tdg", {0, 1, [](P, Q q) { return one(Gate::rz(-1, 3), {}, q[0]); }}},
        // Y = i X Z, phase included so the lowering stays exact under control
        {"y", {0, 1, [](P, Q q) {
                   return std::vector<Apply>{
                       {Gate::rz(1, 1), {}, {q[0]}}, {Gate::x(), {}, {q[0]}}, {Gate::ph(1, 2), {}, {q[0]}}};
               }}},
        // equal to qelib1's rz up to a global phase
        {"rz", {1, 1, [](P p, Q q) { return one(Gate::rz(p[0]), {}, q[0]); }}},
        {"u1", {1, 1, [](P p, Q q) { return one(Gate::rz(p[0]), {}, q[0]); }}},
        {"p", {1, 1, [](P p, Q q) { return one(Gate::rz(p[0]), {}, q[0]); }}},
        {"cx", {0, 2, [](P, Q q) { return one(Gate::x(), {q[0]}, q[1]); }}},
        {"CX", {0, 2, [](P, Q q) { return one(Gate::x(), {q[0]}, q[1]); }}},
        {"cz", {0, 2, [](P, Q q) { return one(Gate::rz(1, 1), {q[0]}, q[1]); }}},
        {"cu1", {1, 2, [](P p, Q q) { return one(Gate::rz(p[0]), {q[0]}, q[1]); }}},
        {"cp", {1, 2, [](P p, Q q) { return one(Gate::rz(p[0]), {q[0]}, q[1]); }}},
        // diag(e^{-ia/2}, e^{ia/2}) on the target when the control is set
        {"crz", {1, 2, [](P p, Q q) {
                     return std::vector<Apply>{{Gate::rz(p[0]), {q[0]}, {q[1]}},
                                               {Gate::rz(p[0].halved().negated()), {}, {q[0]}}};
                 }}},
        {"ch", {0, 2, [](P, Q q) { return lower_controlled_hadamard({Gate::h(), {q[0]}, {q[1]}}); }}},
        {"ccx", {0, 3, [](P, Q q) { return one(Gate::x(), {q[0], q[1]}, q[2]); }}},
        {"swap", {0, 2, [](P, Q q) {
                      return std::vector<Apply>{
                          {Gate::x(), {q[0]}, {q[1]}}, {Gate::x(), {q[1]}, {q[0]}}, {Gate::x(), {q[0]}, {q[1]}}};
                  }}},
        {"cswap", {0, 3, [](P, Q q) {
                       return std::vector<Apply>{{Gate::x(), {q[2]}, {q[1]}},
                                                 {Gate::x(), {q[0], q[1]}, {q[2]}},
                                                 {Gate::x(), {q[2]}, {q[1]}}};
                   }}},
    };
    return table;
}

}  // namespace

bool is_builtin_gate(const std::string& name) {
    return builtins().contains(name);
}

std::vector<Apply> lower_gate(const std::string& name, const std::vector<DyadicAngle>& params,
                              const std::vector<WireId>& operands) {
    auto it = builtins().find(name);
    if (it == builtins().end()) {
        throw UnsupportedGate(name);
    }
    if (params.size() != it->second.n_params || operands.size() != it->second.n_operands) {
        throw Error("gate '" + name + "' takes " + std::to_string(it->second.n_params) + " parameters and " +
                    std::to_string(it->second.n_operands) + " operands");
    }
    return it->second.lower(params, operands);
}

}  // namespace hqec
