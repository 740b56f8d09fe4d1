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

#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "qcrt/compiler.h"
#include "qcrt/error.h"

namespace qcrt::compiler {

namespace {

/// Logical qubits whose FREE must become an explicit reset because the index
/// is allocated again later (more than one ALLOC, or an ALLOC inside a loop).
std::vector<bool> qubits_needing_reset(const ir::QuantumCode &code) {
    const auto &insts = code.instructions;
    std::unordered_map<std::string, std::size_t> labels;
    for (std::size_t k = 0; k < insts.size(); k++) {
        if (auto l = std::get_if<ir::Label>(&insts[k])) {
            labels.emplace(l->name, k);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> loops;
    auto back_edge = [&](const std::string &target, std::size_t from) {
        auto to = labels.at(target);
        if (to <= from) {
            loops.emplace_back(to, from);
        }
    };
    for (std::size_t k = 0; k < insts.size(); k++) {
        if (auto br = std::get_if<ir::Br>(&insts[k])) {
            back_edge(br->if_true, k);
            back_edge(br->if_false, k);
        } else if (auto j = std::get_if<ir::Jmp>(&insts[k])) {
            back_edge(j->target, k);
        }
    }
    std::vector<int> alloc_count(code.qubit_count, 0);
    std::vector<bool> reset(code.qubit_count, false);
    for (std::size_t k = 0; k < insts.size(); k++) {
        if (auto a = std::get_if<ir::Alloc>(&insts[k])) {
            if (++alloc_count[a->qubit] > 1) {
                reset[a->qubit] = true;
            }
            for (auto [lo, hi] : loops) {
                if (lo <= k && k <= hi) {
                    reset[a->qubit] = true;
                }
            }
        }
    }
    return reset;
}

class Router {
   public:
    Router(const ir::CouplingGraph &graph, std::vector<ir::Instruction> &out)
        : graph_(graph), out_(out), phys_of_(graph.node_count()), log_of_(graph.node_count()) {
        std::iota(phys_of_.begin(), phys_of_.end(), 0);
        std::iota(log_of_.begin(), log_of_.end(), 0);
    }

    ir::QubitId phys(ir::QubitId logical) const {
        return phys_of_[logical];
    }

    /// Moves the control of a two-qubit gate next to its target.
    void route(ir::QubitId control, ir::QubitId target) {
        auto pc = phys_of_[control], pt = phys_of_[target];
        if (graph_.adjacent(pc, pt)) {
            return;
        }
        auto path = graph_.shortest_path(pc, pt);
        for (std::size_t k = 0; k + 2 < path.size(); k++) {
            swap(path[k], path[k + 1]);
            log_.emplace_back(path[k], path[k + 1]);
        }
    }

    void restore() {
        for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
            swap(it->first, it->second);
        }
        log_.clear();
    }

    const std::vector<std::uint32_t> &layout() const {
        return phys_of_;
    }

   private:
    void swap(std::uint32_t a, std::uint32_t b) {
        out_.push_back(ir::Gate{{GateKind::X, 0.0}, {a}, b});
        out_.push_back(ir::Gate{{GateKind::X, 0.0}, {b}, a});
        out_.push_back(ir::Gate{{GateKind::X, 0.0}, {a}, b});
        std::swap(log_of_[a], log_of_[b]);
        phys_of_[log_of_[a]] = a;
        phys_of_[log_of_[b]] = b;
    }

    const ir::CouplingGraph &graph_;
    std::vector<ir::Instruction> &out_;
    std::vector<std::uint32_t> phys_of_;
    std::vector<std::uint32_t> log_of_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> log_;
};

}  // namespace

MappedCode map_to_coupling(const ir::QuantumCode &code, const ir::CouplingGraph &graph) {
    const std::uint32_t n = graph.node_count();
    if (code.qubit_count > n) {
        throw Error(ErrorCode::TooManyQubits, "program uses " + std::to_string(code.qubit_count) +
                                                  " qubits but the coupling graph has " + std::to_string(n));
    }
    auto reset = qubits_needing_reset(code);
    std::unordered_set<std::string> labels;
    for (const auto &inst : code.instructions) {
        if (auto l = std::get_if<ir::Label>(&inst)) {
            labels.insert(l->name);
        }
    }
    std::size_t label_counter = 0;
    auto fresh_label = [&] {
        std::string name;
        do {
            name = "reset" + std::to_string(label_counter++);
        } while (labels.count(name));
        labels.insert(name);
        return name;
    };
    ir::RegId next_reg = code.reg_count;

    std::vector<ir::Instruction> out;
    for (std::uint32_t p = 0; p < n; p++) {
        out.push_back(ir::Alloc{p});
    }
    Router router(graph, out);
    for (const auto &inst : code.instructions) {
        if (std::holds_alternative<ir::Alloc>(inst)) {
            continue;
        }
        if (auto f = std::get_if<ir::Free>(&inst)) {
            if (!reset[f->qubit]) {
                continue;
            }
            router.restore();
            ir::RegId r = next_reg++;
            std::string one = fresh_label(), done = fresh_label();
            out.push_back(ir::Measure{{f->qubit}, r});
            out.push_back(ir::Br{r, one, done});
            out.push_back(ir::Label{one});
            out.push_back(ir::Gate{{GateKind::X, 0.0}, {}, f->qubit});
            out.push_back(ir::Label{done});
            continue;
        }
        if (auto g = std::get_if<ir::Gate>(&inst)) {
            if (g->controls.size() > 1) {
                throw Error(ErrorCode::InvalidProgram, "routing needs gates with at most one control");
            }
            ir::Gate mapped = *g;
            if (!g->controls.empty()) {
                router.route(g->controls[0], g->target);
                mapped.controls[0] = router.phys(g->controls[0]);
            }
            mapped.target = router.phys(g->target);
            out.push_back(std::move(mapped));
            continue;
        }
        if (auto m = std::get_if<ir::Measure>(&inst)) {
            ir::Measure mapped = *m;
            for (auto &q : mapped.qubits) {
                q = router.phys(q);
            }
            out.push_back(std::move(mapped));
            continue;
        }
        if (ir::is_control_flow(inst)) {
            router.restore();
        }
        out.push_back(inst);
    }

    MappedCode result{code, {}};
    result.code.instructions = std::move(out);
    result.code.qubit_count = n;
    result.code.reg_count = next_reg;
    const auto &layout = router.layout();
    result.final_layout.assign(layout.begin(), layout.begin() + code.qubit_count);
    return result;
}

ir::QuantumCode emit_assembly(const ir::QuantumCode &code, const ir::CouplingGraph *coupling) {
    ir::QuantumCode out = cancel_inverse_pairs(code);
    out = merge_rotations(out);
    out = decompose_multictrl(out);
    out = cancel_inverse_pairs(out);
    out = merge_rotations(out);
    if (coupling) {
        out = map_to_coupling(out, *coupling).code;
    }
    out.level = ir::Level::Assembly;
    ir::validate(out);
    return out;
}

}  // namespace qcrt::compiler
