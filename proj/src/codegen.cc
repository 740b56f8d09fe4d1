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

#include "qcrt/codegen.h"

#include <deque>
#include <optional>
#include <unordered_map>

#include "qcrt/error.h"

namespace qcrt::codegen {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// A structured if/while in the node arena, delimited by its marker nodes.
struct Region {
    bool is_loop;
    NodeId begin;         // IfBegin / WhileBegin
    NodeId middle;        // IfElse / WhileTest
    NodeId end;           // IfEnd / WhileEnd
    std::size_t parent;   // enclosing region or kNone
};

struct Structure {
    std::vector<Region> regions;
    std::vector<std::size_t> region_of;  // innermost region of each node
};

Structure analyze_structure(std::span<const ast::Node> nodes) {
    Structure s;
    s.region_of.assign(nodes.size(), kNone);
    std::vector<std::size_t> open;
    for (NodeId n = 0; n < nodes.size(); n++) {
        const auto &node = nodes[n];
        std::size_t enclosing = open.empty() ? kNone : open.back();
        if (std::holds_alternative<ast::IfBegin>(node) || std::holds_alternative<ast::WhileBegin>(node)) {
            s.region_of[n] = s.regions.size();
            s.regions.push_back({std::holds_alternative<ast::WhileBegin>(node), n, n, n, enclosing});
            open.push_back(s.regions.size() - 1);
        } else if (std::holds_alternative<ast::IfElse>(node) || std::holds_alternative<ast::WhileTest>(node)) {
            s.regions.at(open.back()).middle = n;
            s.region_of[n] = open.back();
        } else if (std::holds_alternative<ast::IfEnd>(node) || std::holds_alternative<ast::WhileEnd>(node)) {
            s.regions.at(open.back()).end = n;
            s.region_of[n] = open.back();
            open.pop_back();
        } else {
            s.region_of[n] = enclosing;
        }
    }
    if (!open.empty()) {
        throw Error(ErrorCode::InvalidProgram, "unterminated if/while in the runtime AST");
    }
    return s;
}

std::vector<std::uint32_t> qubits_of(const ast::Node &node) {
    if (auto a = std::get_if<ast::Alloc>(&node)) {
        return {a->qubit};
    }
    if (auto f = std::get_if<ast::Free>(&node)) {
        return {f->qubit};
    }
    if (auto g = std::get_if<ast::Gate>(&node)) {
        auto out = g->controls;
        out.push_back(g->target);
        return out;
    }
    if (auto m = std::get_if<ast::Measure>(&node)) {
        return m->qubits;
    }
    return {};
}

/// Dependency cone of the demanded nodes.
std::vector<bool> compute_cone(std::span<const ast::Node> nodes, const Structure &structure,
                               std::span<const NodeId> demanded) {
    std::unordered_map<std::uint32_t, std::vector<NodeId>> touching;
    std::unordered_map<NodeId, std::vector<NodeId>> assigns;
    for (NodeId n = 0; n < nodes.size(); n++) {
        for (auto q : qubits_of(nodes[n])) {
            touching[q].push_back(n);
        }
        if (auto a = std::get_if<ast::Assign>(&nodes[n])) {
            assigns[a->var].push_back(n);
        }
    }

    std::vector<bool> in_cone(nodes.size(), false);
    std::unordered_map<std::uint32_t, bool> qubit_in_cone;
    std::deque<NodeId> work;
    auto add = [&](NodeId n) {
        if (!in_cone[n]) {
            in_cone[n] = true;
            work.push_back(n);
        }
    };
    for (NodeId n : demanded) {
        add(n);
    }
    while (!work.empty()) {
        NodeId n = work.front();
        work.pop_front();
        const auto &node = nodes[n];
        // Qubits of any included node pull in their whole history; since gates
        // include all their operands, this closes over interactions.
        for (auto q : qubits_of(node)) {
            if (!qubit_in_cone[q]) {
                qubit_in_cone[q] = true;
                for (NodeId m : touching[q]) {
                    add(m);
                }
            }
        }
        if (auto b = std::get_if<ast::BinOpNode>(&node)) {
            add(b->lhs);
            add(b->rhs);
        } else if (std::holds_alternative<ast::Var>(node)) {
            for (NodeId a : assigns[n]) {
                add(a);
            }
        } else if (auto a = std::get_if<ast::Assign>(&node)) {
            add(a->var);
            add(a->value);
        } else if (auto ib = std::get_if<ast::IfBegin>(&node)) {
            add(ib->cond);
        } else if (auto wt = std::get_if<ast::WhileTest>(&node)) {
            add(wt->cond);
        }
        for (std::size_t r = structure.region_of[n]; r != kNone; r = structure.regions[r].parent) {
            const auto &reg = structure.regions[r];
            add(reg.begin);
            add(reg.middle);
            add(reg.end);
        }
    }
    return in_cone;
}

class Emitter {
   public:
    Emitter(std::span<const ast::Node> nodes, const Structure &structure, const std::vector<bool> &in_cone)
        : nodes_(nodes), structure_(structure), in_cone_(in_cone) {
    }

    GeneratedCode run(std::span<const NodeId> demanded) {
        for (NodeId n = 0; n < nodes_.size(); n++) {
            if (in_cone_[n]) {
                emit(n);
            }
        }
        for (NodeId n : demanded) {
            body_.push_back(ir::Out{reg_of(n)});
        }

        // Registers written only on some paths start out as 0.
        GeneratedCode out;
        for (auto [node, reg] : registers_) {
            if (conditionally_executed(node)) {
                out.code.instructions.push_back(ir::Set{reg, 0});
            }
        }
        out.code.instructions.insert(out.code.instructions.end(), body_.begin(), body_.end());
        out.code.level = ir::Level::Code;
        out.code.recount();
        out.registers = registers_;
        ir::validate(out.code);
        return out;
    }

   private:
    ir::QubitId qubit(std::uint32_t q) {
        auto [it, inserted] = qubits_.emplace(q, static_cast<ir::QubitId>(qubits_.size()));
        return it->second;
    }

    ir::RegId define(NodeId n) {
        auto reg = static_cast<ir::RegId>(registers_.size());
        registers_.emplace_back(n, reg);
        reg_index_.emplace(n, reg);
        return reg;
    }

    ir::RegId reg_of(NodeId n) const {
        return reg_index_.at(n);
    }

    std::string fresh_label() {
        return "L" + std::to_string(label_counter_++);
    }

    bool conditionally_executed(NodeId n) const {
        for (std::size_t r = structure_.region_of[n]; r != kNone; r = structure_.regions[r].parent) {
            const auto &reg = structure_.regions[r];
            if (!reg.is_loop || n > reg.middle) {
                return true;
            }
        }
        return false;
    }

    bool has_cone_nodes(NodeId from, NodeId to) const {
        for (NodeId n = from + 1; n < to; n++) {
            if (in_cone_[n]) {
                return true;
            }
        }
        return false;
    }

    void emit(NodeId n) {
        const auto &node = nodes_[n];
        if (auto a = std::get_if<ast::Alloc>(&node)) {
            body_.push_back(ir::Alloc{qubit(a->qubit)});
        } else if (auto f = std::get_if<ast::Free>(&node)) {
            body_.push_back(ir::Free{qubit(f->qubit)});
        } else if (auto g = std::get_if<ast::Gate>(&node)) {
            ir::Gate out{g->gate, {}, 0};
            for (auto c : g->controls) {
                out.controls.push_back(qubit(c));
            }
            out.target = qubit(g->target);
            body_.push_back(std::move(out));
        } else if (auto m = std::get_if<ast::Measure>(&node)) {
            ir::Measure out{{}, 0};
            for (auto q : m->qubits) {
                out.qubits.push_back(qubit(q));
            }
            out.reg = define(n);
            body_.push_back(std::move(out));
        } else if (auto lit = std::get_if<ast::IntLiteral>(&node)) {
            body_.push_back(ir::Set{define(n), lit->value});
        } else if (auto b = std::get_if<ast::BinOpNode>(&node)) {
            ir::RegId lhs = reg_of(b->lhs), rhs = reg_of(b->rhs);
            body_.push_back(ir::Bin{b->op, define(n), lhs, rhs});
        } else if (auto v = std::get_if<ast::Var>(&node)) {
            body_.push_back(ir::Set{define(n), v->init});
        } else if (auto as = std::get_if<ast::Assign>(&node)) {
            // x | x == x: a register copy within the instruction set.
            ir::RegId src = reg_of(as->value);
            body_.push_back(ir::Bin{BinOp::Or, reg_of(as->var), src, src});
        } else if (auto ib = std::get_if<ast::IfBegin>(&node)) {
            const auto &reg = structure_.regions[structure_.region_of[n]];
            IfLabels labels;
            labels.has_else = has_cone_nodes(reg.middle, reg.end);
            labels.then_label = fresh_label();
            if (labels.has_else) {
                labels.else_label = fresh_label();
            }
            labels.end_label = fresh_label();
            body_.push_back(ir::Br{reg_of(ib->cond), labels.then_label,
                                   labels.has_else ? labels.else_label : labels.end_label});
            body_.push_back(ir::Label{labels.then_label});
            if_labels_.push_back(std::move(labels));
        } else if (std::holds_alternative<ast::IfElse>(node)) {
            const auto &labels = if_labels_.back();
            if (labels.has_else) {
                body_.push_back(ir::Jmp{labels.end_label});
                body_.push_back(ir::Label{labels.else_label});
            }
        } else if (std::holds_alternative<ast::IfEnd>(node)) {
            body_.push_back(ir::Label{if_labels_.back().end_label});
            if_labels_.pop_back();
        } else if (std::holds_alternative<ast::WhileBegin>(node)) {
            LoopLabels labels{fresh_label(), fresh_label(), fresh_label()};
            body_.push_back(ir::Label{labels.head});
            loop_labels_.push_back(std::move(labels));
        } else if (auto wt = std::get_if<ast::WhileTest>(&node)) {
            const auto &labels = loop_labels_.back();
            body_.push_back(ir::Br{reg_of(wt->cond), labels.body, labels.exit});
            body_.push_back(ir::Label{labels.body});
        } else if (std::holds_alternative<ast::WhileEnd>(node)) {
            const auto &labels = loop_labels_.back();
            body_.push_back(ir::Jmp{labels.head});
            body_.push_back(ir::Label{labels.exit});
            loop_labels_.pop_back();
        }
    }

    struct IfLabels {
        std::string then_label, else_label, end_label;
        bool has_else = false;
    };
    struct LoopLabels {
        std::string head, body, exit;
    };

    std::span<const ast::Node> nodes_;
    const Structure &structure_;
    const std::vector<bool> &in_cone_;
    std::vector<ir::Instruction> body_;
    std::unordered_map<std::uint32_t, ir::QubitId> qubits_;
    std::vector<std::pair<NodeId, ir::RegId>> registers_;
    std::unordered_map<NodeId, ir::RegId> reg_index_;
    std::vector<IfLabels> if_labels_;
    std::vector<LoopLabels> loop_labels_;
    std::size_t label_counter_ = 0;
};

}  // namespace

GeneratedCode build_code(std::span<const ast::Node> nodes, std::span<const NodeId> demanded,
                         const Options &options) {
    if (demanded.empty()) {
        throw Error(ErrorCode::EmptyDemand, "no futures demanded");
    }
    for (NodeId n : demanded) {
        if (n >= nodes.size()) {
            throw Error(ErrorCode::ForeignFuture, "demanded node " + std::to_string(n) + " does not exist");
        }
    }
    auto structure = analyze_structure(nodes);
    std::vector<bool> in_cone =
        options.prune ? compute_cone(nodes, structure, demanded) : std::vector<bool>(nodes.size(), true);
    return Emitter(nodes, structure, in_cone).run(demanded);
}

GeneratedCode build_code(const Process &process, std::span<const Future> demanded, const Options &options) {
    if (process.state() != ProcessState::Building) {
        throw Error(ErrorCode::ProcessAlreadyExecuted, "process already executed");
    }
    std::vector<NodeId> ids;
    for (const auto &f : demanded) {
        if (f.process_id() != process.id()) {
            throw Error(ErrorCode::ForeignFuture, "demanded future belongs to another process");
        }
        ids.push_back(f.node());
    }
    return build_code(process.nodes(), ids, options);
}

}  // namespace qcrt::codegen
