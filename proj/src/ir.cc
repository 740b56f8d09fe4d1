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

#include "qcrt/ir.h"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>

#include "qcrt/error.h"

namespace qcrt::ir {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void invalid(std::size_t index, const std::string &what) {
    throw Error(ErrorCode::InvalidProgram, "instruction " + std::to_string(index) + ": " + what);
}

std::vector<RegId> reads_of(const Instruction &inst) {
    if (auto b = std::get_if<Bin>(&inst)) {
        return {b->lhs, b->rhs};
    }
    if (auto br = std::get_if<Br>(&inst)) {
        return {br->reg};
    }
    if (auto out = std::get_if<Out>(&inst)) {
        return {out->reg};
    }
    return {};
}

std::optional<RegId> write_of(const Instruction &inst) {
    if (auto m = std::get_if<Measure>(&inst)) {
        return m->reg;
    }
    if (auto s = std::get_if<Set>(&inst)) {
        return s->reg;
    }
    if (auto b = std::get_if<Bin>(&inst)) {
        return b->dst;
    }
    return std::nullopt;
}

}  // namespace

void QuantumCode::recount() {
    std::uint32_t q = 0, r = 0;
    for (const auto &inst : instructions) {
        for (QubitId id : touched_qubits(inst)) {
            q = std::max(q, id + 1);
        }
        for (RegId id : reads_of(inst)) {
            r = std::max(r, id + 1);
        }
        if (auto w = write_of(inst)) {
            r = std::max(r, *w + 1);
        }
    }
    qubit_count = q;
    reg_count = r;
}

std::vector<QubitId> touched_qubits(const Instruction &inst) {
    return std::visit(
        Overloaded{
            [](const Alloc &a) { return std::vector<QubitId>{a.qubit}; },
            [](const Free &f) { return std::vector<QubitId>{f.qubit}; },
            [](const Gate &g) {
                std::vector<QubitId> out = g.controls;
                out.push_back(g.target);
                return out;
            },
            [](const Measure &m) { return m.qubits; },
            [](const auto &) { return std::vector<QubitId>{}; },
        },
        inst);
}

bool is_control_flow(const Instruction &inst) noexcept {
    return std::holds_alternative<Label>(inst) || std::holds_alternative<Br>(inst) || std::holds_alternative<Jmp>(inst);
}

void validate(const QuantumCode &code) {
    const auto &insts = code.instructions;
    std::unordered_map<std::string, std::size_t> labels;
    for (std::size_t k = 0; k < insts.size(); k++) {
        if (auto l = std::get_if<Label>(&insts[k])) {
            if (!labels.emplace(l->name, k).second) {
                throw Error(ErrorCode::DuplicateLabel, "label @" + l->name + " defined twice");
            }
        }
    }
    auto resolve = [&](const std::string &name) {
        auto it = labels.find(name);
        if (it == labels.end()) {
            throw Error(ErrorCode::UndefinedLabel, "label @" + name + " is not defined");
        }
        return it->second;
    };

    std::vector<std::vector<std::size_t>> successors(insts.size());
    for (std::size_t k = 0; k < insts.size(); k++) {
        const auto &inst = insts[k];
        for (QubitId q : touched_qubits(inst)) {
            if (q >= code.qubit_count) {
                invalid(k, "qubit q" + std::to_string(q) + " out of range");
            }
        }
        for (RegId r : reads_of(inst)) {
            if (r >= code.reg_count) {
                invalid(k, "register i" + std::to_string(r) + " out of range");
            }
        }
        if (auto w = write_of(inst); w && *w >= code.reg_count) {
            invalid(k, "register i" + std::to_string(*w) + " out of range");
        }
        if (auto g = std::get_if<Gate>(&inst)) {
            auto controls = g->controls;
            std::sort(controls.begin(), controls.end());
            if (std::adjacent_find(controls.begin(), controls.end()) != controls.end()) {
                invalid(k, "repeated control qubit");
            }
            if (std::binary_search(controls.begin(), controls.end(), g->target)) {
                invalid(k, "target is also a control");
            }
            if (code.level == Level::Assembly) {
                if (g->controls.size() > 1) {
                    invalid(k, "assembly gates take at most one control");
                }
                if (g->controls.size() == 1 && g->gate.kind != GateKind::X) {
                    invalid(k, "the only two-qubit assembly gate is cx");
                }
            }
        }
        if (auto m = std::get_if<Measure>(&inst)) {
            if (m->qubits.empty() || m->qubits.size() > 63) {
                invalid(k, "measure takes between 1 and 63 qubits");
            }
            auto qs = m->qubits;
            std::sort(qs.begin(), qs.end());
            if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
                invalid(k, "repeated measured qubit");
            }
        }

        if (auto br = std::get_if<Br>(&inst)) {
            successors[k] = {resolve(br->if_true), resolve(br->if_false)};
        } else if (auto j = std::get_if<Jmp>(&inst)) {
            successors[k] = {resolve(j->target)};
        } else if (k + 1 < insts.size()) {
            successors[k] = {k + 1};
        }
    }

    // Must-defined register analysis: a register is readable only if every
    // path from the entry writes it first.
    if (insts.empty()) {
        return;
    }
    std::vector<std::vector<bool>> defined_in(insts.size());
    std::vector<bool> visited(insts.size(), false);
    defined_in[0].assign(code.reg_count, false);
    visited[0] = true;
    std::deque<std::size_t> work{0};
    while (!work.empty()) {
        std::size_t k = work.front();
        work.pop_front();
        auto out = defined_in[k];
        if (auto w = write_of(insts[k])) {
            out[*w] = true;
        }
        for (std::size_t s : successors[k]) {
            if (!visited[s]) {
                visited[s] = true;
                defined_in[s] = out;
                work.push_back(s);
                continue;
            }
            bool changed = false;
            for (std::size_t r = 0; r < out.size(); r++) {
                if (defined_in[s][r] && !out[r]) {
                    defined_in[s][r] = false;
                    changed = true;
                }
            }
            if (changed) {
                work.push_back(s);
            }
        }
    }
    for (std::size_t k = 0; k < insts.size(); k++) {
        if (!visited[k]) {
            continue;
        }
        for (RegId r : reads_of(insts[k])) {
            if (!defined_in[k][r]) {
                invalid(k, "register i" + std::to_string(r) + " may be read before it is written");
            }
        }
    }
}

}  // namespace qcrt::ir
