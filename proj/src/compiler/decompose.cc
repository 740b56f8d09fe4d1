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

#include <cmath>

#include "qcrt/compiler.h"

namespace qcrt::compiler {

namespace {

constexpr double kEps = 1e-12;

/// U = e^{i alpha} RZ(beta) RY(gamma) RZ(delta).
struct ZyzAngles {
    double alpha, beta, gamma, delta;
};

ZyzAngles zyz(const Matrix2 &u) {
    Complex det = u[0] * u[3] - u[1] * u[2];
    double alpha = std::arg(det) / 2;
    Complex phase = std::polar(1.0, -alpha);
    Complex v00 = u[0] * phase, v10 = u[2] * phase, v11 = u[3] * phase;
    double gamma = 2 * std::atan2(std::abs(v10), std::abs(v00));
    double sum = 0, diff = 0;  // beta + delta, beta - delta
    if (std::abs(v00) > kEps) {
        sum = 2 * std::arg(v11);
    }
    if (std::abs(v10) > kEps) {
        diff = 2 * std::arg(v10);
    }
    return {alpha, (sum + diff) / 2, gamma, (sum - diff) / 2};
}

ir::Gate single(GateKind kind, double param, ir::QubitId q) {
    return ir::Gate{{kind, param}, {}, q};
}

ir::Gate cx(ir::QubitId c, ir::QubitId t) {
    return ir::Gate{{GateKind::X, 0.0}, {c}, t};
}

void emit_toffoli(std::vector<ir::Instruction> &out, ir::QubitId c1, ir::QubitId c2, ir::QubitId t) {
    out.push_back(single(GateKind::H, 0, t));
    out.push_back(cx(c2, t));
    out.push_back(single(GateKind::TD, 0, t));
    out.push_back(cx(c1, t));
    out.push_back(single(GateKind::T, 0, t));
    out.push_back(cx(c2, t));
    out.push_back(single(GateKind::TD, 0, t));
    out.push_back(cx(c1, t));
    out.push_back(single(GateKind::T, 0, c2));
    out.push_back(single(GateKind::T, 0, t));
    out.push_back(single(GateKind::H, 0, t));
    out.push_back(cx(c1, c2));
    out.push_back(single(GateKind::T, 0, c1));
    out.push_back(single(GateKind::TD, 0, c2));
    out.push_back(cx(c1, c2));
}

/// Controlled-U as C, CX, B, CX, A on the target and a phase on the control,
/// with A*B*C = I and A*X*B*X*C = e^{-i alpha} U.
void emit_controlled(std::vector<ir::Instruction> &out, const GateSpec &gate, ir::QubitId c, ir::QubitId t) {
    if (gate.kind == GateKind::X) {
        out.push_back(cx(c, t));
        return;
    }
    auto [alpha, beta, gamma, delta] = zyz(gate.matrix());
    out.push_back(single(GateKind::RZ, (delta - beta) / 2, t));
    out.push_back(cx(c, t));
    out.push_back(single(GateKind::RZ, -(delta + beta) / 2, t));
    out.push_back(single(GateKind::RY, -gamma / 2, t));
    out.push_back(cx(c, t));
    out.push_back(single(GateKind::RY, gamma / 2, t));
    out.push_back(single(GateKind::RZ, beta, t));
    out.push_back(single(GateKind::P, alpha, c));
}

std::size_t ancillas_needed(const ir::Gate &g) {
    std::size_t n = g.controls.size();
    if (n < 2 || (n == 2 && g.gate.kind == GateKind::X)) {
        return 0;
    }
    return n - 1;
}

}  // namespace

ir::QuantumCode decompose_multictrl(const ir::QuantumCode &code) {
    std::size_t ancilla_count = 0;
    for (const auto &inst : code.instructions) {
        if (auto g = std::get_if<ir::Gate>(&inst)) {
            ancilla_count = std::max(ancilla_count, ancillas_needed(*g));
        }
    }
    const ir::QubitId base = code.qubit_count;

    std::vector<ir::Instruction> out;
    for (std::size_t k = 0; k < ancilla_count; k++) {
        out.push_back(ir::Alloc{static_cast<ir::QubitId>(base + k)});
    }
    for (const auto &inst : code.instructions) {
        const auto *g = std::get_if<ir::Gate>(&inst);
        if (!g || g->controls.empty() || (g->controls.size() == 1 && g->gate.kind == GateKind::X)) {
            out.push_back(inst);
            continue;
        }
        const auto &cs = g->controls;
        if (cs.size() == 1) {
            emit_controlled(out, g->gate, cs[0], g->target);
            continue;
        }
        if (cs.size() == 2 && g->gate.kind == GateKind::X) {
            emit_toffoli(out, cs[0], cs[1], g->target);
            continue;
        }
        // AND ladder: ancilla[k] holds the conjunction of controls 0..k+1.
        std::size_t n = cs.size();
        auto anc = [&](std::size_t k) { return static_cast<ir::QubitId>(base + k); };
        std::vector<ir::Instruction> compute;
        emit_toffoli(compute, cs[0], cs[1], anc(0));
        for (std::size_t k = 1; k + 1 < n; k++) {
            emit_toffoli(compute, anc(k - 1), cs[k + 1], anc(k));
        }
        out.insert(out.end(), compute.begin(), compute.end());
        emit_controlled(out, g->gate, anc(n - 2), g->target);
        // Every gate in the ladder is self-inverse as a block, so undoing it
        // is the Toffolis in reverse order.
        std::vector<ir::Instruction> uncompute;
        for (std::size_t k = n - 2; k >= 1; k--) {
            emit_toffoli(uncompute, anc(k - 1), cs[k + 1], anc(k));
        }
        emit_toffoli(uncompute, cs[0], cs[1], anc(0));
        out.insert(out.end(), uncompute.begin(), uncompute.end());
    }
    for (std::size_t k = 0; k < ancilla_count; k++) {
        out.push_back(ir::Free{static_cast<ir::QubitId>(base + k)});
    }

    ir::QuantumCode result = code;
    result.instructions = std::move(out);
    result.qubit_count = base + static_cast<ir::QubitId>(ancilla_count);
    return result;
}

}  // namespace qcrt::compiler
