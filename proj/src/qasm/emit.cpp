// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "hqec/errors.hpp"
#include "hqec/qasm.hpp"
#include "json.hpp"

namespace hqec {

namespace {

std::string angle_text(DyadicAngle a) {
    if (a.is_zero()) {
        return "0";
    }
    const int e = a.denom_exp - 1;
    std::string num = a.multiplier == 1 ? "pi" : std::to_string(a.multiplier) + "*pi";
    if (e == 0) {
        return num;
    }
    return num + "/" + (e <= 10 ? std::to_string(1 << e) : "2^" + std::to_string(e));
}

std::string wire(WireId w) {
    return "q[" + std::to_string(w) + "]";
}

std::string bit(ClassicalBitId b) {
    return "c" + std::to_string(b) + "[0]";
}

std::string apply_text(const Apply& a) {
    const std::size_t nc = a.controls.size();
    const Gate& g = a.gate;
    std::string name;
    if (a.targets.size() == 1) {
        switch (g.kind) {
        case GateKind::X:
            name = nc == 0 ? "x" : nc == 1 ? "cx" : nc == 2 ? "ccx" : "";
            break;
        case GateKind::H:
            name = nc == 0 ? "h" : "";
            break;
        case GateKind::RZ:
            if (nc == 0) {
                static const std::pair<DyadicAngle, const char*> named[] = {
                    {{1, 1}, "z"}, {{1, 2}, "s"}, {{3, 2}, "sdg"}, {{1, 3}, "t"}, {{7, 3}, "tdg"}};
                for (const auto& [ang, n] : named) {
                    if (g.angle == ang) {
                        name = n;
                    }
                }
                if (name.empty()) {
                    name = "u1(" + angle_text(g.angle) + ")";
                }
            } else if (nc == 1) {
                name = g.angle == DyadicAngle{1, 1} ? "cz" : "cu1(" + angle_text(g.angle) + ")";
            }
            break;
        case GateKind::Ph:
            break;
        }
    }
    if (name.empty()) {
        static const char* prefix[] = {"kph_", "krz_", "kx_", "kh_"};
        name = prefix[static_cast<int>(g.kind)] + std::to_string(nc);
        if (g.has_angle()) {
            name += "(" + angle_text(g.angle) + ")";
        }
    }
    std::string s = name + " ";
    bool first = true;
    for (auto w : a.controls) {
        s += (first ? "" : ",") + wire(w);
        first = false;
    }
    for (auto w : a.targets) {
        s += (first ? "" : ",") + wire(w);
        first = false;
    }
    return s + ";";
}

}  // namespace

EmittedProgram emit_qasm(const HybridCircuit& c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (c.n_qubits > 0) {
        os << "qreg q[" << c.n_qubits << "];\n";
    }
    for (ClassicalBitId b = 0; b < c.n_cbits; ++b) {
        os << "creg c" << b << "[1];\n";
    }
    for (const auto& ins : c.body) {
        if (const auto* a = std::get_if<Apply>(&ins)) {
            os << apply_text(*a) << "\n";
        } else if (const auto* cc = std::get_if<ClassicallyControlled>(&ins)) {
            if (cc->bits.size() == 1) {
                os << "if(c" << cc->bits[0] << "==1) " << apply_text(cc->inner) << "\n";
            } else {
                os << "// @if(";
                for (std::size_t i = 0; i < cc->bits.size(); ++i) {
                    os << (i ? "&" : "") << bit(cc->bits[i]);
                }
                os << ") " << apply_text(cc->inner) << "\n";
            }
        } else if (const auto* m = std::get_if<Measure>(&ins)) {
            os << "measure " << wire(m->q) << " -> " << bit(m->c) << ";\n";
        } else if (const auto* in = std::get_if<Init>(&ins)) {
            os << "reset " << wire(in->q) << ";\n";
        } else if (const auto* nb = std::get_if<NotBit>(&ins)) {
            os << "// @notbit " << bit(nb->c) << ";\n";
        }
    }
    EmittedProgram out;
    for (auto w : c.discards) {
        os << "// @discard " << wire(w) << ";\n";
        out.sidecar.discard.push_back(wire(w));
    }
    out.text = os.str();
    return out;
}

Sidecar parse_sidecar(std::string_view json) {
    Sidecar s;
    try {
        auto doc = nlohmann::json::parse(json);
        if (!doc.is_object()) {
            throw ParseError(1, 1, "sidecar must be a JSON object");
        }
        if (doc.contains("discard")) {
            s.discard = doc.at("discard").get<std::vector<std::string>>();
        }
        if (doc.contains("keep")) {
            s.keep = doc.at("keep").get<std::vector<std::string>>();
        }
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, e.byte, std::string("sidecar: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, 1, std::string("sidecar: ") + e.what());
    }
    if (s.keep) {
        for (const auto& n : s.discard) {
            if (std::find(s.keep->begin(), s.keep->end(), n) != s.keep->end()) {
                throw ParseError(1, 1, "sidecar both keeps and discards '" + n + "'");
            }
        }
    }
    return s;
}

std::string to_json(const Sidecar& s) {
    nlohmann::json doc;
    doc["discard"] = s.discard;
    if (s.keep) {
        doc["keep"] = *s.keep;
    }
    return doc.dump(2) + "\n";
}

std::filesystem::path sidecar_path(const std::filesystem::path& program) {
    return program.parent_path() / (program.stem().string() + ".sidecar.json");
}

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) {
        throw Error("cannot write " + p.string());
    }
}

}  // namespace

ParsedProgram load_qasm(const std::filesystem::path& path) {
    std::string text = slurp(path);
    std::optional<Sidecar> sc;
    if (auto sp = sidecar_path(path); std::filesystem::exists(sp)) {
        sc = parse_sidecar(slurp(sp));
    }
    return parse_program(text, sc);
}

void save_qasm(const std::filesystem::path& path, const HybridCircuit& c) {
    auto e = emit_qasm(c);
    spill(path, e.text);
    auto sp = sidecar_path(path);
    if (!e.sidecar.discard.empty()) {
        spill(sp, to_json(e.sidecar));
    } else if (std::filesystem::exists(sp)) {
        std::filesystem::remove(sp);
    }
}

}  // namespace hqec
