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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcrt/compiler.h"

namespace qcrt::compiler {

namespace {

constexpr double kAngleTolerance = 1e-12;

bool same_operands(const ir::Gate &a, const ir::Gate &b) {
    if (a.target != b.target || a.controls.size() != b.controls.size()) {
        return false;
    }
    auto ca = a.controls, cb = b.controls;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
}

bool shares_qubit(const ir::Instruction &inst, const std::vector<ir::QubitId> &qubits) {
    for (auto q : ir::touched_qubits(inst)) {
        if (std::find(qubits.begin(), qubits.end(), q) != qubits.end()) {
            return true;
        }
    }
    return false;
}

/// Index of the next live instruction after `from` touching any of the gate's
/// qubits inside the same basic block, or npos.
std::size_t next_touching(const std::vector<ir::Instruction> &insts, const std::vector<bool> &removed,
                          std::size_t from) {
    const auto &gate = std::get<ir::Gate>(insts[from]);
    auto qubits = ir::touched_qubits(gate);
    for (std::size_t j = from + 1; j < insts.size(); j++) {
        if (removed[j]) {
            continue;
        }
        if (ir::is_control_flow(insts[j]) || std::holds_alternative<ir::Measure>(insts[j])) {
            return std::string::npos;
        }
        if (shares_qubit(insts[j], qubits)) {
            return j;
        }
    }
    return std::string::npos;
}

ir::QuantumCode without(const ir::QuantumCode &code, const std::vector<bool> &removed) {
    ir::QuantumCode out = code;
    out.instructions.clear();
    for (std::size_t k = 0; k < code.instructions.size(); k++) {
        if (!removed[k]) {
            out.instructions.push_back(code.instructions[k]);
        }
    }
    return out;
}

bool is_identity_rotation(const GateSpec &g) {
    double period = (g.kind == GateKind::P ? 2.0 : 4.0) * std::numbers::pi;
    double r = std::abs(std::fmod(g.param, period));
    return r <= kAngleTolerance || period - r <= kAngleTolerance;
}

}  // namespace

ir::QuantumCode cancel_inverse_pairs(const ir::QuantumCode &code) {
    ir::QuantumCode current = code;
    while (true) {
        const auto &insts = current.instructions;
        std::vector<bool> removed(insts.size(), false);
        bool changed = false;
        for (std::size_t i = 0; i < insts.size(); i++) {
            if (removed[i] || !std::holds_alternative<ir::Gate>(insts[i])) {
                continue;
            }
            std::size_t j = next_touching(insts, removed, i);
            if (j == std::string::npos) {
                continue;
            }
            const auto *a = &std::get<ir::Gate>(insts[i]);
            const auto *b = std::get_if<ir::Gate>(&insts[j]);
            if (b && same_operands(*a, *b) && are_inverse(a->gate, b->gate, kAngleTolerance)) {
                removed[i] = removed[j] = true;
                changed = true;
            }
        }
        if (!changed) {
            return current;
        }
        current = without(current, removed);
    }
}

ir::QuantumCode merge_rotations(const ir::QuantumCode &code) {
    ir::QuantumCode current = code;
    while (true) {
        auto &insts = current.instructions;
        std::vector<bool> removed(insts.size(), false);
        bool changed = false;
        for (std::size_t i = 0; i < insts.size(); i++) {
            if (removed[i]) {
                continue;
            }
            auto *a = std::get_if<ir::Gate>(&insts[i]);
            if (!a || !is_rotation(a->gate.kind)) {
                continue;
            }
            while (true) {
                std::size_t j = next_touching(insts, removed, i);
                if (j == std::string::npos) {
                    break;
                }
                const auto *b = std::get_if<ir::Gate>(&insts[j]);
                if (!b || b->gate.kind != a->gate.kind || !same_operands(*a, *b)) {
                    break;
                }
                a->gate.param += b->gate.param;
                removed[j] = true;
                changed = true;
            }
            if (is_identity_rotation(a->gate)) {
                removed[i] = true;
                changed = true;
            }
        }
        if (!changed) {
            return current;
        }
        current = without(current, removed);
    }
}

}  // namespace qcrt::compiler
