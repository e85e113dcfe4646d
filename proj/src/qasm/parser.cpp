// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "hqec/errors.hpp"
#include "hqec/qasm.hpp"
#include "lexer.hpp"
#include "value.hpp"

namespace hqec {

namespace {

using qasm::Tok;
using qasm::Token;
using qasm::Value;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind : std::uint8_t { Const, Param, Neg, Binary, Call } kind = Kind::Const;
    Value value;
    std::string name;  // parameter or function name
    char op = 0;
    ExprPtr lhs, rhs;
};

using Env = std::map<std::string, Value>;

Value eval(const Expr& e, const Env& env) {
    switch (e.kind) {
    case Expr::Kind::Const:
        return e.value;
    case Expr::Kind::Param:
        return env.at(e.name);
    case Expr::Kind::Neg:
        return -eval(*e.lhs, env);
    case Expr::Kind::Binary: {
        Value l = eval(*e.lhs, env), r = eval(*e.rhs, env);
        switch (e.op) {
        case '+':
            return l + r;
        case '-':
            return l - r;
        case '*':
            return l * r;
        case '/':
            return l / r;
        default:
            return l.pow(r);
        }
    }
    case Expr::Kind::Call: {
        const double x = eval(*e.lhs, env).to_double();
        static const std::map<std::string, double (*)(double)> fns = {
            {"sin", [](double v) { return std::sin(v); }}, {"cos", [](double v) { return std::cos(v); }},
            {"tan", [](double v) { return std::tan(v); }}, {"exp", [](double v) { return std::exp(v); }},
            {"ln", [](double v) { return std::log(v); }},  {"sqrt", [](double v) { return std::sqrt(v); }},
        };
        return Value::real(fns.at(e.name)(x));
    }
    }
    return {};
}

struct Operand {
    std::string reg;
    std::optional<std::size_t> index;
    std::size_t line = 0, col = 0;
};

struct GateCall {
    std::string name;
    std::vector<ExprPtr> params;
    std::vector<std::string> args;
    std::size_t line = 0, col = 0;
};

struct GateDef {
    std::vector<std::string> params;
    std::vector<std::string> args;
    std::vector<GateCall> body;
};

struct Register {
    std::vector<WireId> wires;  // current logical wire of each slot
};

// kx_<nc>, kh_<nc>, krz_<nc>, kph_<nc>
std::optional<std::pair<GateKind, std::size_t>> kernel_extension(const std::string& name) {
    static const std::pair<const char*, GateKind> prefixes[] = {
        {"kx_", GateKind::X}, {"kh_", GateKind::H}, {"krz_", GateKind::RZ}, {"kph_", GateKind::Ph}};
    for (const auto& [p, kind] : prefixes) {
        const std::string_view pv(p);
        if (name.size() > pv.size() && name.compare(0, pv.size(), pv) == 0) {
            std::string digits = name.substr(pv.size());
            if (digits.size() > 3 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
                return std::nullopt;
            }
            return std::pair{kind, static_cast<std::size_t>(std::stoul(digits))};
        }
    }
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(qasm::lex(text)) {}

    ParsedProgram run(const std::optional<Sidecar>& sidecar) {
        while (peek().kind != Tok::End) {
            statement();
        }
        apply_discards(sidecar);
        auto violations = validate_well_formed(out_.circuit);
        if (!violations.empty()) {
            const auto& v = violations.front();
            auto [line, col] = v.index < pos_.size() ? pos_[v.index] : std::pair{peek().line, peek().col};
            throw ParseError(line, col, v.message);
        }
        return std::move(out_);
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    ParsedProgram out_;
    std::vector<std::pair<std::size_t, std::size_t>> pos_;  // per instruction
    std::map<std::string, Register> qregs_;
    std::map<std::string, std::vector<ClassicalBitId>> cregs_;
    std::map<std::string, GateDef> defs_;
    std::vector<bool> addressed_, measured_;
    std::set<WireId> abandoned_;
    std::vector<Operand> pragma_discards_;
    std::size_t stmt_line_ = 0, stmt_col_ = 0;

    // ---- token helpers ----

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.col, msg); }

    bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Symbol && peek(k).text == s; }

    bool accept(const char* s) {
        if (is_sym(s)) {
            ++at_;
            return true;
        }
        return false;
    }

    void expect(const char* s) {
        if (!accept(s)) {
            fail(peek(), std::string("expected '") + s + "'" + describe(peek()));
        }
    }

    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? " at end of input" : " before '" + t.text + "'";
    }

    std::string ident() {
        if (peek().kind != Tok::Ident) {
            fail(peek(), "expected identifier" + describe(peek()));
        }
        return toks_[at_++].text;
    }

    std::size_t integer() {
        if (peek().kind != Tok::Int) {
            fail(peek(), "expected integer" + describe(peek()));
        }
        const Token& t = toks_[at_++];
        if (t.text.size() > 9) {
            fail(t, "integer too large");
        }
        return std::stoul(t.text);
    }

    // ---- expressions ----

    ExprPtr expr(const std::vector<std::string>& params) {
        ExprPtr l = term(params);
        while (is_sym("+") || is_sym("-")) {
            char op = toks_[at_++].text[0];
            l = binary(op, l, term(params));
        }
        return l;
    }

    ExprPtr term(const std::vector<std::string>& params) {
        ExprPtr l = unary(params);
        while (is_sym("*") || is_sym("/")) {
            char op = toks_[at_++].text[0];
            l = binary(op, l, unary(params));
        }
        return l;
    }

    ExprPtr unary(const std::vector<std::string>& params) {
        if (accept("-")) {
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Neg;
            e->lhs = unary(params);
            return e;
        }
        if (accept("+")) {
            return unary(params);
        }
        ExprPtr base = primary(params);
        if (accept("^")) {
            return binary('^', base, unary(params));
        }
        return base;
    }

    static ExprPtr binary(char op, ExprPtr l, ExprPtr r) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Binary;
        e->op = op;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }

    ExprPtr primary(const std::vector<std::string>& params) {
        const Token& t = peek();
        auto e = std::make_shared<Expr>();
        if (t.kind == Tok::Int || t.kind == Tok::Real) {
            ++at_;
            e->value = qasm::parse_number(t.text);
            return e;
        }
        if (accept("(")) {
            ExprPtr inner = expr(params);
            expect(")");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            ++at_;
            if (t.text == "pi") {
                e->value = Value::pi();
                return e;
            }
            if (std::find(params.begin(), params.end(), t.text) != params.end()) {
                e->kind = Expr::Kind::Param;
                e->name = t.text;
                return e;
            }
            static const std::set<std::string> fns = {"sin", "cos", "tan", "exp", "ln", "sqrt"};
            if (fns.contains(t.text)) {
                e->kind = Expr::Kind::Call;
                e->name = t.text;
                expect("(");
                e->lhs = expr(params);
                expect(")");
                return e;
            }
            fail(t, "unknown identifier '" + t.text + "' in expression");
        }
        fail(t, "expected expression" + describe(t));
    }

    std::vector<ExprPtr> param_list(const std::vector<std::string>& params) {
        std::vector<ExprPtr> out;
        if (accept("(")) {
            if (!accept(")")) {
                do {
                    out.push_back(expr(params));
                } while (accept(","));
                expect(")");
            }
        }
        return out;
    }

    // ---- operands ----

    Operand operand() {
        Operand o;
        o.line = peek().line;
        o.col = peek().col;
        o.reg = ident();
        if (accept("[")) {
            o.index = integer();
            expect("]");
        }
        return o;
    }

    std::vector<Operand> operand_list() {
        std::vector<Operand> out{operand()};
        while (accept(",")) {
            out.push_back(operand());
        }
        return out;
    }

    std::vector<WireId> resolve_q(const Operand& o) const {
        auto it = qregs_.find(o.reg);
        if (it == qregs_.end()) {
            throw ParseError(o.line, o.col, "unknown quantum register '" + o.reg + "'");
        }
        if (!o.index) {
            return it->second.wires;
        }
        if (*o.index >= it->second.wires.size()) {
            throw ParseError(o.line, o.col, "index " + std::to_string(*o.index) + " out of range for '" + o.reg + "'");
        }
        return {it->second.wires[*o.index]};
    }

    std::vector<ClassicalBitId> resolve_c(const Operand& o) const {
        auto it = cregs_.find(o.reg);
        if (it == cregs_.end()) {
            throw ParseError(o.line, o.col, "unknown classical register '" + o.reg + "'");
        }
        if (!o.index) {
            return it->second;
        }
        if (*o.index >= it->second.size()) {
            throw ParseError(o.line, o.col, "index " + std::to_string(*o.index) + " out of range for '" + o.reg + "'");
        }
        return {it->second[*o.index]};
    }

    // Register arguments broadcast; all must have equal length.
    template <typename F>
    void broadcast(const std::vector<std::vector<std::uint32_t>>& args, const Token& at, F&& body) {
        std::size_t n = 1;
        for (const auto& a : args) {
            if (a.size() != 1) {
                if (n != 1 && a.size() != n) {
                    fail(at, "register arguments differ in size");
                }
                n = a.size();
            }
        }
        for (const auto& a : args) {
            if (a.empty()) {
                fail(at, "empty register argument");
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::uint32_t> pick;
            for (const auto& a : args) {
                pick.push_back(a.size() == 1 ? a[0] : a[j]);
            }
            body(pick);
        }
    }

    // ---- emission into the circuit ----

    void emit(Instruction ins) {
        for (auto w : wires_of(ins)) {
            if (w < addressed_.size()) {
                addressed_[w] = true;
            }
        }
        if (const auto* m = std::get_if<Measure>(&ins); m && m->q < measured_.size()) {
            measured_[m->q] = true;
        }
        out_.circuit.body.push_back(std::move(ins));
        pos_.emplace_back(stmt_line_, stmt_col_);
    }

    std::vector<Apply> expand_gate(const std::string& name, const std::vector<Value>& params,
                                   const std::vector<WireId>& wires, const Token& at, int depth) {
        if (depth > 64) {
            fail(at, "gate definitions nested too deeply");
        }
        if (auto it = defs_.find(name); it != defs_.end()) {
            const GateDef& d = it->second;
            if (params.size() != d.params.size() || wires.size() != d.args.size()) {
                fail(at, "gate '" + name + "' takes " + std::to_string(d.params.size()) + " parameters and " +
                             std::to_string(d.args.size()) + " operands");
            }
            Env env;
            for (std::size_t i = 0; i < params.size(); ++i) {
                env[d.params[i]] = params[i];
            }
            std::map<std::string, WireId> bind;
            for (std::size_t i = 0; i < wires.size(); ++i) {
                bind[d.args[i]] = wires[i];
            }
            std::vector<Apply> out;
            for (const auto& call : d.body) {
                std::vector<Value> vs;
                for (const auto& e : call.params) {
                    vs.push_back(eval(*e, env));
                }
                std::vector<WireId> ws;
                for (const auto& a : call.args) {
                    ws.push_back(bind.at(a));
                }
                Token where{Tok::Ident, call.name, call.line, call.col};
                for (auto& g : expand_gate(call.name, vs, ws, where, depth + 1)) {
                    out.push_back(std::move(g));
                }
            }
            return out;
        }
        std::vector<DyadicAngle> angles;
        for (const auto& v : params) {
            angles.push_back(qasm::angle_of(v));
        }
        if (auto ext = kernel_extension(name)) {
            auto [kind, nc] = *ext;
            const std::size_t want = (kind == GateKind::RZ || kind == GateKind::Ph) ? 1 : 0;
            if (angles.size() != want || wires.size() < nc + 1) {
                fail(at, "malformed kernel gate '" + name + "'");
            }
            Gate g{kind, want ? angles[0] : DyadicAngle{}};
            g = g.has_angle() ? (kind == GateKind::RZ ? Gate::rz(g.angle) : Gate::ph(g.angle)) : g;
            return {{g, {wires.begin(), wires.begin() + static_cast<std::ptrdiff_t>(nc)},
                     {wires.begin() + static_cast<std::ptrdiff_t>(nc), wires.end()}}};
        }
        try {
            return lower_gate(name, angles, wires);
        } catch (const UnsupportedGate&) {
            throw;
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }

    // Parses `name(params) operands;` at top level and lowers it.
    std::vector<std::vector<Apply>> gate_application() {
        const Token at = peek();
        std::string name = ident();
        std::vector<ExprPtr> ps = param_list({});
        std::vector<Operand> ops = operand_list();
        expect(";");
        std::vector<Value> vals;
        for (const auto& e : ps) {
            vals.push_back(eval(*e, {}));
        }
        std::vector<std::vector<WireId>> args;
        for (const auto& o : ops) {
            args.push_back(resolve_q(o));
        }
        std::vector<std::vector<Apply>> out;
        broadcast(args, at, [&](const std::vector<WireId>& ws) { out.push_back(expand_gate(name, vals, ws, at, 0)); });
        return out;
    }

    // ---- statements ----

    void statement() {
        const Token& t = peek();
        stmt_line_ = t.line;
        stmt_col_ = t.col;
        if (t.kind == Tok::Pragma) {
            ++at_;
            pragma(t.line);
            return;
        }
        if (t.kind != Tok::Ident) {
            fail(t, "expected statement" + describe(t));
        }
        const std::string& kw = t.text;
        if (kw == "OPENQASM") {
            ++at_;
            const Token& v = peek();
            if ((v.kind != Tok::Real && v.kind != Tok::Int) || v.text.rfind("2", 0) != 0) {
                fail(v, "only OpenQASM 2.0 is supported");
            }
            ++at_;
            expect(";");
        } else if (kw == "include") {
            ++at_;
            if (peek().kind != Tok::String) {
                fail(peek(), "expected file name");
            }
            if (peek().text != "qelib1.inc") {
                fail(peek(), "cannot include '" + peek().text + "'");
            }
            ++at_;
            expect(";");
        } else if (kw == "qreg" || kw == "creg") {
            register_decl(kw == "qreg");
        } else if (kw == "gate") {
            gate_def();
        } else if (kw == "opaque") {
            fail(t, "opaque gates are not supported");
        } else if (kw == "measure") {
            ++at_;
            Operand q = operand();
            expect("->");
            Operand c = operand();
            expect(";");
            broadcast({resolve_q(q), resolve_c(c)}, t, [&](const std::vector<std::uint32_t>& p) {
                emit(Measure{p[0], p[1]});
            });
        } else if (kw == "reset") {
            ++at_;
            Operand q = operand();
            expect(";");
            std::vector<std::size_t> slots;
            if (q.index) {
                slots.push_back(*q.index);
            } else {
                for (std::size_t i = 0; i < resolve_q(q).size(); ++i) {
                    slots.push_back(i);
                }
            }
            resolve_q(q);
            for (auto s : slots) {
                reset(q.reg, s);
            }
        } else if (kw == "barrier") {
            ++at_;
            for (const auto& o : operand_list()) {
                resolve_q(o);
            }
            expect(";");
        } else if (kw == "if") {
            ++at_;
            expect("(");
            Operand c{ident(), std::nullopt, t.line, t.col};
            expect("==");
            std::size_t v = integer();
            expect(")");
            auto bits = resolve_c(c);
            if (bits.size() < 64 && v >> bits.size() != 0) {
                fail(t, "value " + std::to_string(v) + " does not fit register '" + c.reg + "'");
            }
            if (peek().kind != Tok::Ident || peek().text == "measure" || peek().text == "reset" ||
                peek().text == "barrier") {
                fail(peek(), "only gate applications may be classically controlled");
            }
            auto groups = gate_application();
            std::vector<ClassicalBitId> zeros;
            for (std::size_t i = 0; i < bits.size(); ++i) {
                if (!(i < 64 && (v >> i & 1))) {
                    zeros.push_back(bits[i]);
                }
            }
            for (auto b : zeros) {
                emit(NotBit{b});
            }
            for (auto& g : groups) {
                for (auto& a : g) {
                    emit(ClassicallyControlled{bits, std::move(a)});
                }
            }
            for (auto b : zeros) {
                emit(NotBit{b});
            }
        } else {
            for (auto& g : gate_application()) {
                for (auto& a : g) {
                    emit(std::move(a));
                }
            }
        }
    }

    void register_decl(bool quantum) {
        const Token& t = toks_[at_++];
        std::string name = ident();
        expect("[");
        std::size_t n = integer();
        expect("]");
        expect(";");
        if (qregs_.contains(name) || cregs_.contains(name)) {
            fail(t, "register '" + name + "' already declared");
        }
        if (quantum) {
            Register r;
            for (std::size_t i = 0; i < n; ++i) {
                r.wires.push_back(new_wire(name + "[" + std::to_string(i) + "]"));
            }
            qregs_[name] = std::move(r);
        } else {
            auto& bits = cregs_[name];
            for (std::size_t i = 0; i < n; ++i) {
                bits.push_back(out_.circuit.n_cbits++);
            }
        }
    }

    WireId new_wire(std::string label) {
        out_.wire_names.push_back(std::move(label));
        addressed_.push_back(false);
        measured_.push_back(false);
        return out_.circuit.n_qubits++;
    }

    void reset(const std::string& reg, std::size_t slot) {
        WireId& w = qregs_[reg].wires[slot];
        if (!addressed_[w]) {
            emit(Init{w});
            return;
        }
        // a used wire cannot be re-initialized in place: continue on a fresh one
        const WireId old = w;
        w = new_wire(reg + "[" + std::to_string(slot) + "]'" + std::to_string(out_.circuit.n_qubits));
        if (!measured_[old]) {
            abandoned_.insert(old);
        }
        out_.warnings.push_back("reset of " + reg + "[" + std::to_string(slot) + "] after use continues on fresh wire " +
                                std::to_string(w) + (measured_[old] ? "" : "; the old wire is discarded"));
        emit(Init{w});
    }

    void gate_def() {
        const Token& t = toks_[at_++];
        std::string name = ident();
        if (defs_.contains(name)) {
            fail(t, "gate '" + name + "' already defined");
        }
        GateDef d;
        if (accept("(")) {
            if (!accept(")")) {
                do {
                    d.params.push_back(ident());
                } while (accept(","));
                expect(")");
            }
        }
        do {
            d.args.push_back(ident());
        } while (accept(","));
        expect("{");
        while (!accept("}")) {
            const Token& c = peek();
            if (c.kind == Tok::Ident && c.text == "barrier") {
                ++at_;
                do {
                    ident();
                } while (accept(","));
                expect(";");
                continue;
            }
            GateCall call;
            call.line = c.line;
            call.col = c.col;
            call.name = ident();
            call.params = param_list(d.params);
            do {
                const Token& a = peek();
                call.args.push_back(ident());
                if (std::find(d.args.begin(), d.args.end(), call.args.back()) == d.args.end()) {
                    fail(a, "unknown gate argument '" + call.args.back() + "'");
                }
            } while (accept(","));
            expect(";");
            if (call.name != name && !defs_.contains(call.name) && !is_builtin_gate(call.name) &&
                !kernel_extension(call.name)) {
                throw UnsupportedGate(call.name);
            }
            d.body.push_back(std::move(call));
        }
        defs_[name] = std::move(d);
    }

    void pragma(std::size_t line) {
        if (peek().kind != Tok::Ident) {
            skip_line(line);
            return;
        }
        const Token& t = peek();
        if (t.text == "discard") {
            ++at_;
            for (auto& o : operand_list()) {
                resolve_q(o);
                pragma_discards_.push_back(std::move(o));
            }
            expect(";");
        } else if (t.text == "notbit") {
            ++at_;
            Operand c = operand();
            expect(";");
            for (auto b : resolve_c(c)) {
                emit(NotBit{b});
            }
        } else if (t.text == "if") {
            ++at_;
            expect("(");
            std::vector<ClassicalBitId> bits;
            do {
                for (auto b : resolve_c(operand())) {
                    bits.push_back(b);
                }
            } while (accept("&"));
            expect(")");
            for (auto& g : gate_application()) {
                for (auto& a : g) {
                    emit(ClassicallyControlled{bits, std::move(a)});
                }
            }
        } else {
            skip_line(line);
        }
    }

    void skip_line(std::size_t line) {
        while (peek().kind != Tok::End && peek().line == line) {
            ++at_;
        }
    }

    void apply_discards(const std::optional<Sidecar>& sidecar) {
        std::set<WireId>& disc = out_.circuit.discards;
        disc = abandoned_;
        auto by_name = [&](const std::string& name) {
            // `reg[i]` or `reg`
            Operand o;
            auto lb = name.find('[');
            o.reg = name.substr(0, lb);
            if (lb != std::string::npos) {
                auto rb = name.find(']', lb);
                std::string idx = name.substr(lb + 1, rb == std::string::npos ? rb : rb - lb - 1);
                if (rb != name.size() - 1 || idx.empty() || idx.size() > 9 ||
                    !std::all_of(idx.begin(), idx.end(), ::isdigit)) {
                    throw UnresolvedSidecarName(name);
                }
                o.index = std::stoul(idx);
            }
            if (!qregs_.contains(o.reg) || (o.index && *o.index >= qregs_.at(o.reg).wires.size())) {
                throw UnresolvedSidecarName(name);
            }
            return resolve_q(o);
        };
        std::set<WireId> keep;
        if (sidecar && sidecar->keep) {
            for (const auto& n : *sidecar->keep) {
                for (auto w : by_name(n)) {
                    keep.insert(w);
                }
            }
        }
        for (const auto& o : pragma_discards_) {
            for (auto w : resolve_q(o)) {
                if (!keep.contains(w)) {
                    disc.insert(w);
                }
            }
        }
        if (sidecar) {
            for (const auto& n : sidecar->discard) {
                for (auto w : by_name(n)) {
                    if (keep.contains(w)) {
                        throw ParseError(0, 0, "sidecar both keeps and discards '" + n + "'");
                    }
                    disc.insert(w);
                }
            }
        }
    }
};

}  // namespace

ParsedProgram parse_program(std::string_view text, const std::optional<Sidecar>& sidecar) {
    return Parser(text).run(sidecar);
}

HybridCircuit parse_qasm(std::string_view text, const std::optional<Sidecar>& sidecar) {
    return parse_program(text, sidecar).circuit;
}

}  // namespace hqec
