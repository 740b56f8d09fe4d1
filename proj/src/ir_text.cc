// Copyright 2026 The qcrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>

#include "qcrt/error.h"
#include "qcrt/ir.h"

namespace qcrt::ir {

namespace {

std::string format_angle(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string qubit_name(QubitId q) {
    return "q" + std::to_string(q);
}

std::string reg_name(RegId r) {
    return "i" + std::to_string(r);
}

/// Cursor over one line of IR text.
class LineParser {
   public:
    LineParser(std::string_view line, std::size_t line_no) : text_(line), line_no_(line_no) {
    }

    [[noreturn]] void fail(const std::string &what) const {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no_) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            pos_++;
        }
    }

    bool at_end() {
        skip_space();
        return pos_ == text_.size();
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) != token) {
            fail("expected '" + std::string(token) + "'");
        }
        pos_ += token.size();
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    std::string_view word() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            pos_++;
        }
        if (start == pos_) {
            fail("expected identifier");
        }
        return text_.substr(start, pos_ - start);
    }

    std::uint32_t index_with_prefix(char prefix) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != prefix) {
            fail(std::string("expected ") + prefix + "<index>");
        }
        pos_++;
        std::uint32_t value = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec != std::errc{}) {
            fail(std::string("bad ") + prefix + " index");
        }
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return value;
    }

    QubitId qubit() {
        return index_with_prefix('q');
    }

    RegId reg() {
        return index_with_prefix('i');
    }

    std::string label() {
        expect("@");
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            pos_++;
        }
        if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
            fail("bad label name");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t integer() {
        skip_space();
        std::int64_t value = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec != std::errc{}) {
            fail("bad integer literal");
        }
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return value;
    }

    double real() {
        skip_space();
        double value = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec != std::errc{}) {
            fail("bad angle");
        }
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return value;
    }

    void finish() {
        if (!at_end()) {
            fail("unexpected trailing text");
        }
    }

    std::size_t line_no() const {
        return line_no_;
    }

   private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_;
};

Instruction parse_line(LineParser &p) {
    std::string_view op = p.word();
    if (op == "alloc") {
        return Alloc{p.qubit()};
    }
    if (op == "free") {
        return Free{p.qubit()};
    }
    if (op == "gate") {
        std::string_view name = p.word();
        auto kind = gate_from_mnemonic(name);
        if (!kind) {
            throw Error(ErrorCode::UnknownMnemonic,
                        "line " + std::to_string(p.line_no()) + ": unknown gate '" + std::string(name) + "'");
        }
        GateSpec spec{*kind, 0.0};
        if (spec.has_param()) {
            p.expect("(");
            spec.param = p.real();
            p.expect(")");
        }
        Gate g{spec, {}, 0};
        if (p.accept("ctrl")) {
            std::vector<QubitId> qs{p.qubit()};
            while (p.accept(",")) {
                qs.push_back(p.qubit());
            }
            if (qs.size() < 2) {
                p.fail("ctrl needs at least one control and a target");
            }
            g.target = qs.back();
            qs.pop_back();
            g.controls = std::move(qs);
        } else {
            g.target = p.qubit();
        }
        return g;
    }
    if (op == "measure") {
        Measure m{{p.qubit()}, 0};
        while (p.accept(",")) {
            m.qubits.push_back(p.qubit());
        }
        p.expect("->");
        m.reg = p.reg();
        return m;
    }
    if (op == "set") {
        RegId r = p.reg();
        p.expect("=");
        return Set{r, p.integer()};
    }
    if (op == "bin") {
        std::string_view name = p.word();
        auto bop = binop_from_mnemonic(name);
        if (!bop) {
            throw Error(ErrorCode::UnknownMnemonic, "line " + std::to_string(p.line_no()) +
                                                        ": unknown operator '" + std::string(name) + "'");
        }
        RegId dst = p.reg();
        p.expect(",");
        RegId lhs = p.reg();
        p.expect(",");
        RegId rhs = p.reg();
        return Bin{*bop, dst, lhs, rhs};
    }
    if (op == "label") {
        return Label{p.label()};
    }
    if (op == "br") {
        RegId r = p.reg();
        std::string t = p.label();
        std::string f = p.label();
        return Br{r, std::move(t), std::move(f)};
    }
    if (op == "jmp") {
        return Jmp{p.label()};
    }
    if (op == "out") {
        return Out{p.reg()};
    }
    throw Error(ErrorCode::UnknownMnemonic,
                "line " + std::to_string(p.line_no()) + ": unknown instruction '" + std::string(op) + "'");
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

std::string serialize(const Instruction &inst) {
    return std::visit(
        Overloaded{
            [](const Alloc &a) { return "alloc " + qubit_name(a.qubit); },
            [](const Free &f) { return "free " + qubit_name(f.qubit); },
            [](const Gate &g) {
                std::string s = "gate ";
                s += gate_mnemonic(g.gate.kind);
                if (g.gate.has_param()) {
                    s += "(" + format_angle(g.gate.param) + ")";
                }
                if (!g.controls.empty()) {
                    s += " ctrl";
                    for (QubitId c : g.controls) {
                        s += " " + qubit_name(c) + ",";
                    }
                }
                s += " " + qubit_name(g.target);
                return s;
            },
            [](const Measure &m) {
                std::string s = "measure ";
                for (std::size_t k = 0; k < m.qubits.size(); k++) {
                    s += (k ? ", " : "") + qubit_name(m.qubits[k]);
                }
                return s + " -> " + reg_name(m.reg);
            },
            [](const Set &s) { return "set " + reg_name(s.reg) + " = " + std::to_string(s.value); },
            [](const Bin &b) {
                return "bin " + std::string(binop_mnemonic(b.op)) + " " + reg_name(b.dst) + ", " + reg_name(b.lhs) +
                       ", " + reg_name(b.rhs);
            },
            [](const Label &l) { return "label @" + l.name; },
            [](const Br &b) { return "br " + reg_name(b.reg) + " @" + b.if_true + " @" + b.if_false; },
            [](const Jmp &j) { return "jmp @" + j.target; },
            [](const Out &o) { return "out " + reg_name(o.reg); },
        },
        inst);
}

std::string serialize(const QuantumCode &code) {
    std::string out;
    for (const auto &inst : code.instructions) {
        out += serialize(inst);
        out += '\n';
    }
    return out;
}

QuantumCode parse(std::string_view text, Level level) {
    QuantumCode code;
    code.level = level;
    std::size_t line_no = 0;
    while (!text.empty()) {
        line_no++;
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        LineParser p(line, line_no);
        if (p.at_end()) {
            continue;
        }
        code.instructions.push_back(parse_line(p));
        p.finish();
    }
    code.recount();
    validate(code);
    return code;
}

}  // namespace qcrt::ir
