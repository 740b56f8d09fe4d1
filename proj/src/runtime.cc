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

#include "qcrt/runtime.h"

#include <algorithm>
#include <atomic>
#include <unordered_map>
#include <unordered_set>

#include "qcrt/codegen.h"
#include "qcrt/compiler.h"
#include "qcrt/error.h"

namespace qcrt {

namespace detail {

namespace {

std::atomic<std::uint64_t> g_next_process_id{1};

constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct QubitRecord {
    QubitStatus status;
    NodeId tail;
};

struct PendingGate {
    GateSpec gate;
    std::vector<std::uint32_t> controls;
    std::uint32_t target;
};

enum class FrameKind { If, While };

struct Frame {
    FrameKind kind;
    std::vector<std::uint32_t> allocated;
};

std::string qname(std::uint32_t q) {
    return "qubit " + std::to_string(q);
}

}  // namespace

struct ProcessData : std::enable_shared_from_this<ProcessData> {
    ProcessData(std::uint64_t seed, ProcessOptions options)
        : id(g_next_process_id.fetch_add(1)), seed(seed), options(std::move(options)) {
    }

    std::uint64_t id;
    std::uint64_t seed;
    ProcessOptions options;
    ProcessState state = ProcessState::Building;

    std::vector<ast::Node> nodes;
    std::vector<std::optional<std::int64_t>> values;
    std::vector<QubitRecord> qubits;
    std::unordered_map<NodeId, std::vector<NodeId>> var_assigns;

    std::vector<std::vector<std::uint32_t>> ctrl_stack;
    std::vector<std::vector<PendingGate>> adj_buffers;
    std::vector<Frame> frames;

    std::optional<sim::SimState> final_state;
    std::optional<ir::QuantumCode> executed_code;

    // ---- helpers -------------------------------------------------------

    NodeId append(ast::Node node) {
        nodes.push_back(std::move(node));
        values.emplace_back();
        return static_cast<NodeId>(nodes.size() - 1);
    }

    Future make_future(NodeId node) {
        return Future(shared_from_this(), node);
    }

    void require_building() const {
        if (state != ProcessState::Building) {
            throw Error(ErrorCode::ProcessAlreadyExecuted, "process " + std::to_string(id) + " already executed");
        }
    }

    void require_owned(const Qubit &q) const {
        if (q.process_id() != id || q.index() >= qubits.size()) {
            throw Error(ErrorCode::ForeignQubit, qname(q.index()) + " belongs to another process");
        }
    }

    void require_owned(const Future &f) const {
        if (f.data_.get() != this) {
            throw Error(ErrorCode::ForeignFuture, "future belongs to another process");
        }
    }

    void require_allocated(const Qubit &q) const {
        require_owned(q);
        if (qubits[q.index()].status != QubitStatus::Allocated) {
            throw Error(ErrorCode::QubitNotAllocated, qname(q.index()) + " is measured or freed");
        }
    }

    void require_not_adjoint(const char *what) const {
        if (!adj_buffers.empty()) {
            throw Error(ErrorCode::NonUnitaryInAdjoint, std::string(what) + " inside an adjoint scope");
        }
    }

    bool in_if_frame() const {
        return std::any_of(frames.begin(), frames.end(), [](const Frame &f) { return f.kind == FrameKind::If; });
    }

    std::vector<std::uint32_t> active_controls() const {
        std::vector<std::uint32_t> out;
        for (const auto &set : ctrl_stack) {
            out.insert(out.end(), set.begin(), set.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void append_gate(const GateSpec &gate, const std::vector<std::uint32_t> &controls, std::uint32_t target) {
        ast::Gate node{gate, controls, target, {}};
        for (auto c : controls) {
            node.prev.push_back({c, qubits[c].tail});
        }
        node.prev.push_back({target, qubits[target].tail});
        NodeId id = append(std::move(node));
        for (auto c : controls) {
            qubits[c].tail = id;
        }
        qubits[target].tail = id;
    }

    // ---- classical analysis -------------------------------------------

    bool depends_on_measure(NodeId n, std::unordered_set<NodeId> &seen) const {
        if (!seen.insert(n).second) {
            return false;
        }
        const auto &node = nodes[n];
        if (std::holds_alternative<ast::Measure>(node)) {
            return true;
        }
        if (auto b = std::get_if<ast::BinOpNode>(&node)) {
            return depends_on_measure(b->lhs, seen) || depends_on_measure(b->rhs, seen);
        }
        if (std::holds_alternative<ast::Var>(node)) {
            if (auto it = var_assigns.find(n); it != var_assigns.end()) {
                for (NodeId a : it->second) {
                    if (depends_on_measure(std::get<ast::Assign>(nodes[a]).value, seen)) {
                        return true;
                    }
                }
            }
        }
        return false;
    }

    bool depends_on_measure(NodeId n) const {
        std::unordered_set<NodeId> seen;
        return depends_on_measure(n, seen);
    }

    /// Literals and operators over literals: computable by the host right now.
    bool is_classical(NodeId n) const {
        const auto &node = nodes[n];
        if (std::holds_alternative<ast::IntLiteral>(node)) {
            return true;
        }
        if (auto b = std::get_if<ast::BinOpNode>(&node)) {
            return is_classical(b->lhs) && is_classical(b->rhs);
        }
        return false;
    }

    /// Known value, or an operator whose operands are all known.
    bool computable(NodeId n) const {
        if (values[n]) {
            return true;
        }
        if (auto b = std::get_if<ast::BinOpNode>(&nodes[n])) {
            return computable(b->lhs) && computable(b->rhs);
        }
        return false;
    }

    std::int64_t evaluate(NodeId n) {
        if (values[n]) {
            return *values[n];
        }
        const auto &b = std::get<ast::BinOpNode>(nodes[n]);
        std::int64_t v = apply_binop(b.op, evaluate(b.lhs), evaluate(b.rhs));
        values[n] = v;
        return v;
    }

    // ---- rollback ------------------------------------------------------

    struct Checkpoint {
        std::size_t node_count;
        std::vector<QubitRecord> qubits;
        std::unordered_map<NodeId, std::vector<NodeId>> var_assigns;
        std::size_t frame_count;
        std::size_t ctrl_count;
        std::size_t adj_count;
    };

    Checkpoint checkpoint() const {
        return {nodes.size(), qubits, var_assigns, frames.size(), ctrl_stack.size(), adj_buffers.size()};
    }

    /// Undoes everything recorded since `cp`. Qubits allocated since then stay
    /// reserved (their handles may still exist) but are unusable.
    void rollback(Checkpoint &cp) {
        nodes.resize(cp.node_count);
        values.resize(cp.node_count);
        for (std::size_t q = 0; q < qubits.size(); q++) {
            qubits[q] = q < cp.qubits.size() ? cp.qubits[q] : QubitRecord{QubitStatus::Freed, kNoNode};
        }
        var_assigns = std::move(cp.var_assigns);
        frames.resize(cp.frame_count);
        ctrl_stack.resize(cp.ctrl_count);
        adj_buffers.resize(cp.adj_count);
    }

    template <class F>
    void transact(F &&body) {
        auto cp = checkpoint();
        try {
            body();
        } catch (...) {
            rollback(cp);
            throw;
        }
    }

    // ---- operations ----------------------------------------------------

    Qubit alloc() {
        require_building();
        if (!adj_buffers.empty()) {
            throw Error(ErrorCode::AllocInsideAdjoint, "alloc inside an adjoint scope");
        }
        if (in_if_frame()) {
            throw Error(ErrorCode::AllocInBranch, "alloc inside a measurement-dependent branch");
        }
        auto index = static_cast<std::uint32_t>(qubits.size());
        NodeId node = append(ast::Alloc{index});
        qubits.push_back({QubitStatus::Allocated, node});
        if (!frames.empty()) {
            frames.back().allocated.push_back(index);
        }
        return Qubit(index, id);
    }

    void free(const Qubit &q) {
        require_building();
        require_owned(q);
        require_not_adjoint("free");
        auto &rec = qubits[q.index()];
        if (rec.status == QubitStatus::Allocated) {
            throw Error(ErrorCode::FreeUnmeasured, qname(q.index()) + " must be measured before it is freed");
        }
        if (rec.status == QubitStatus::Freed) {
            throw Error(ErrorCode::DoubleFree, qname(q.index()) + " is already freed");
        }
        if (in_if_frame()) {
            throw Error(ErrorCode::AllocInBranch, "free inside a measurement-dependent branch");
        }
        if (!frames.empty()) {
            const auto &mine = frames.back().allocated;
            if (std::find(mine.begin(), mine.end(), q.index()) == mine.end()) {
                throw Error(ErrorCode::AllocInBranch, qname(q.index()) + " was allocated outside this loop");
            }
        }
        NodeId node = append(ast::Free{q.index(), rec.tail});
        rec.status = QubitStatus::Freed;
        rec.tail = node;
    }

    void gate(const GateSpec &spec, const Qubit &target) {
        require_building();
        require_allocated(target);
        auto controls = active_controls();
        if (std::binary_search(controls.begin(), controls.end(), target.index())) {
            throw Error(ErrorCode::TargetIsControl, qname(target.index()) + " is an active control");
        }
        if (!adj_buffers.empty()) {
            adj_buffers.back().push_back({spec, std::move(controls), target.index()});
            return;
        }
        append_gate(spec, controls, target.index());
    }

    void ctrl(const std::vector<const Qubit *> &controls, const std::function<void()> &block) {
        require_building();
        auto active = active_controls();
        std::vector<std::uint32_t> set;
        for (const Qubit *q : controls) {
            require_allocated(*q);
            if (std::binary_search(active.begin(), active.end(), q->index()) ||
                std::find(set.begin(), set.end(), q->index()) != set.end()) {
                throw Error(ErrorCode::OverlappingControls, qname(q->index()) + " is already a control");
            }
            set.push_back(q->index());
        }
        transact([&] {
            ctrl_stack.push_back(std::move(set));
            block();
            ctrl_stack.pop_back();
        });
    }

    void adj(const std::function<void()> &block) {
        require_building();
        transact([&] {
            adj_buffers.emplace_back();
            block();
            auto recorded = std::move(adj_buffers.back());
            adj_buffers.pop_back();
            for (auto it = recorded.rbegin(); it != recorded.rend(); ++it) {
                GateSpec inv = it->gate.inverse();
                if (!adj_buffers.empty()) {
                    adj_buffers.back().push_back({inv, it->controls, it->target});
                } else {
                    append_gate(inv, it->controls, it->target);
                }
            }
        });
    }

    Future measure(const std::vector<const Qubit *> &qs) {
        require_building();
        require_not_adjoint("measure");
        if (!ctrl_stack.empty()) {
            throw Error(ErrorCode::MeasureInsideCtrl, "measure inside a ctrl scope");
        }
        if (qs.empty()) {
            throw Error(ErrorCode::EmptyMeasure, "measure needs at least one qubit");
        }
        if (qs.size() > 63) {
            throw Error(ErrorCode::TooManyQubits, "measure takes at most 63 qubits");
        }
        ast::Measure node;
        for (const Qubit *q : qs) {
            require_allocated(*q);
            if (std::find(node.qubits.begin(), node.qubits.end(), q->index()) != node.qubits.end()) {
                throw Error(ErrorCode::QubitNotAllocated, qname(q->index()) + " listed twice");
            }
            node.qubits.push_back(q->index());
            node.prev.push_back({q->index(), qubits[q->index()].tail});
        }
        NodeId id = append(std::move(node));
        for (const Qubit *q : qs) {
            qubits[q->index()] = {QubitStatus::Measured, id};
        }
        return make_future(id);
    }

    Future lift(std::int64_t v) {
        NodeId id = append(ast::IntLiteral{v});
        values[id] = v;
        return make_future(id);
    }

    Future var(std::int64_t init) {
        require_building();
        require_not_adjoint("var");
        return make_future(append(ast::Var{init}));
    }

    void assign(const Future &var, const Future &value) {
        require_building();
        require_owned(var);
        require_owned(value);
        require_not_adjoint("assign");
        if (!std::holds_alternative<ast::Var>(nodes[var.node()])) {
            throw Error(ErrorCode::InvalidProgram, "assign target is not a var");
        }
        NodeId id = append(ast::Assign{var.node(), value.node()});
        var_assigns[var.node()].push_back(id);
    }

    Future bin_op(BinOp op, const Future &a, const Future &b) {
        if (a.data_.get() != this || b.data_.get() != this) {
            throw Error(ErrorCode::CrossProcessOperands, "operands come from different processes");
        }
        if (state == ProcessState::Executed) {
            if (!values[a.node()] || !values[b.node()]) {
                throw Error(ErrorCode::NotInCone, "operand was not computed by the executed program");
            }
            NodeId id = append(ast::BinOpNode{op, a.node(), b.node()});
            values[id] = apply_binop(op, *values[a.node()], *values[b.node()]);
            return make_future(id);
        }
        return make_future(append(ast::BinOpNode{op, a.node(), b.node()}));
    }

    void if_then_else(const Future &cond, const std::function<void()> &then_block,
                      const std::function<void()> &else_block) {
        require_building();
        require_owned(cond);
        if (is_classical(cond.node())) {
            bool taken = evaluate(cond.node()) != 0;
            transact([&] {
                if (taken) {
                    then_block();
                } else {
                    else_block();
                }
            });
            return;
        }
        require_not_adjoint("measurement-dependent if");
        transact([&] {
            append(ast::IfBegin{cond.node()});
            frames.push_back({FrameKind::If, {}});
            then_block();
            append(ast::IfElse{});
            else_block();
            frames.pop_back();
            append(ast::IfEnd{});
        });
    }

    void while_loop(const std::function<Future()> &cond_block, const std::function<void()> &body) {
        require_building();
        require_not_adjoint("while");
        transact([&] {
            append(ast::WhileBegin{});
            frames.push_back({FrameKind::While, {}});
            Future cond = cond_block();
            require_owned(cond);
            if (!depends_on_measure(cond.node())) {
                throw Error(ErrorCode::ClassicalConditionLoop,
                            "loop condition does not depend on a measurement; run it on the host");
            }
            append(ast::WhileTest{cond.node()});
            body();
            for (auto q : frames.back().allocated) {
                if (qubits[q].status != QubitStatus::Freed) {
                    throw Error(ErrorCode::LoopQubitLeak, qname(q) + " allocated in the loop is not freed");
                }
            }
            frames.pop_back();
            append(ast::WhileEnd{});
        });
    }

    std::int64_t value(const Future &f) {
        require_owned(f);
        if (values[f.node()]) {
            return *values[f.node()];
        }
        if (is_classical(f.node()) || (state == ProcessState::Executed && computable(f.node()))) {
            return evaluate(f.node());
        }
        if (state == ProcessState::Executed) {
            throw Error(ErrorCode::NotInCone, "future was not part of the executed program");
        }
        execute(std::vector<Future>{f});
        return *values[f.node()];
    }

    void execute(std::span<const Future> demanded);
};

}  // namespace detail

// ---- Future ---------------------------------------------------------------

std::uint64_t Future::process_id() const noexcept {
    return data_->id;
}

bool Future::is_fulfilled() const {
    return data_->values[node_].has_value();
}

std::int64_t Future::value() const {
    return data_->value(*this);
}

// ---- Process --------------------------------------------------------------

Process::Process(std::uint64_t seed, ProcessOptions options)
    : data_(std::make_shared<detail::ProcessData>(seed, std::move(options))) {
}

std::uint64_t Process::id() const noexcept {
    return data_->id;
}

std::uint64_t Process::seed() const noexcept {
    return data_->seed;
}

ProcessState Process::state() const noexcept {
    return data_->state;
}

const ProcessOptions &Process::options() const noexcept {
    return data_->options;
}

Qubit Process::alloc() {
    return data_->alloc();
}

std::vector<Qubit> Process::alloc(std::size_t count) {
    std::vector<Qubit> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; k++) {
        out.push_back(data_->alloc());
    }
    return out;
}

void Process::free(const Qubit &q) {
    data_->free(q);
}

void Process::gate(GateSpec g, const Qubit &target) {
    data_->gate(g, target);
}

void Process::cnot(const Qubit &control, const Qubit &target) {
    ctrl({control}, [&] { x(target); });
}

void Process::ctrl(QubitList controls, const std::function<void()> &block) {
    std::vector<const Qubit *> qs;
    for (const Qubit &q : controls) {
        qs.push_back(&q);
    }
    data_->ctrl(qs, block);
}

void Process::ctrl(std::span<const Qubit> controls, const std::function<void()> &block) {
    std::vector<const Qubit *> qs;
    for (const Qubit &q : controls) {
        qs.push_back(&q);
    }
    data_->ctrl(qs, block);
}

void Process::adj(const std::function<void()> &block) {
    data_->adj(block);
}

Future Process::measure(const Qubit &q) {
    return data_->measure({&q});
}

Future Process::measure(QubitList qs) {
    std::vector<const Qubit *> ptrs;
    for (const Qubit &q : qs) {
        ptrs.push_back(&q);
    }
    return data_->measure(ptrs);
}

Future Process::measure(std::span<const Qubit> qs) {
    std::vector<const Qubit *> ptrs;
    for (const Qubit &q : qs) {
        ptrs.push_back(&q);
    }
    return data_->measure(ptrs);
}

Future Process::lift(std::int64_t value) {
    return data_->lift(value);
}

Future Process::var(std::int64_t init) {
    return data_->var(init);
}

void Process::assign(const Future &var, const Future &value) {
    data_->assign(var, value);
}

void Process::if_then_else(const Future &cond, const std::function<void()> &then_block,
                           const std::function<void()> &else_block) {
    data_->if_then_else(cond, then_block, else_block);
}

void Process::if_then(const Future &cond, const std::function<void()> &then_block) {
    data_->if_then_else(cond, then_block, [] {});
}

void Process::while_loop(const std::function<Future()> &cond_block, const std::function<void()> &body) {
    data_->while_loop(cond_block, body);
}

void Process::prepare_bloch(double theta, double phi, const Qubit &q) {
    gate({GateKind::RY, theta}, q);
    gate({GateKind::RZ, phi}, q);
}

std::int64_t Process::value(const Future &f) {
    return data_->value(f);
}

void Process::execute(std::span<const Future> demanded) {
    data_->execute(demanded);
}

const std::vector<ast::Node> &Process::nodes() const noexcept {
    return data_->nodes;
}

QubitStatus Process::status(const Qubit &q) const {
    data_->require_owned(q);
    return data_->qubits[q.index()].status;
}

std::vector<NodeId> Process::qubit_chain(const Qubit &q) const {
    data_->require_owned(q);
    const auto &nodes = data_->nodes;
    std::vector<NodeId> chain;
    NodeId cur = data_->qubits[q.index()].tail;
    while (cur != detail::kNoNode) {
        chain.push_back(cur);
        const auto &node = nodes[cur];
        NodeId prev = detail::kNoNode;
        auto follow = [&](const std::vector<ast::QubitLink> &links) {
            for (const auto &l : links) {
                if (l.qubit == q.index()) {
                    prev = l.prev;
                }
            }
        };
        if (auto g = std::get_if<ast::Gate>(&node)) {
            follow(g->prev);
        } else if (auto m = std::get_if<ast::Measure>(&node)) {
            follow(m->prev);
        } else if (auto f = std::get_if<ast::Free>(&node)) {
            prev = f->prev;
        }
        cur = prev;
    }
    return chain;
}

const sim::SimState *Process::final_state() const noexcept {
    return data_->final_state ? &*data_->final_state : nullptr;
}

const ir::QuantumCode *Process::executed_code() const noexcept {
    return data_->executed_code ? &*data_->executed_code : nullptr;
}

void detail::ProcessData::execute(std::span<const Future> demanded) {
    require_building();
    for (const auto &f : demanded) {
        require_owned(f);
    }
    if (demanded.empty()) {
        throw Error(ErrorCode::EmptyDemand, "nothing to execute");
    }
    std::vector<NodeId> ids;
    for (const auto &f : demanded) {
        ids.push_back(f.node());
    }
    auto generated = codegen::build_code(nodes, ids);

    ir::QuantumCode code = generated.code;
    if (options.backend == Backend::Assembly) {
        code = compiler::emit_assembly(code, options.coupling ? &*options.coupling : nullptr);
    }
    auto result = sim::run(code, seed, options.run);
    for (auto [node, reg] : generated.registers) {
        values[node] = result.registers[reg];
    }
    state = ProcessState::Executed;
    final_state = std::move(result.state);
    executed_code = std::move(code);
}

// ---- Future operators -----------------------------------------------------

Future bin_op(BinOp op, const Future &a, const Future &b) {
    return a.data_->bin_op(op, a, b);
}

Future bin_op(BinOp op, const Future &a, std::int64_t b) {
    return bin_op(op, a, a.data_->lift(b));
}

Future operator+(const Future &a, const Future &b) {
    return bin_op(BinOp::Add, a, b);
}
Future operator-(const Future &a, const Future &b) {
    return bin_op(BinOp::Sub, a, b);
}
Future operator*(const Future &a, const Future &b) {
    return bin_op(BinOp::Mul, a, b);
}
Future operator/(const Future &a, const Future &b) {
    return bin_op(BinOp::Div, a, b);
}
Future operator%(const Future &a, const Future &b) {
    return bin_op(BinOp::Mod, a, b);
}
Future operator<<(const Future &a, const Future &b) {
    return bin_op(BinOp::Shl, a, b);
}
Future operator>>(const Future &a, const Future &b) {
    return bin_op(BinOp::Shr, a, b);
}
Future operator&(const Future &a, const Future &b) {
    return bin_op(BinOp::And, a, b);
}
Future operator|(const Future &a, const Future &b) {
    return bin_op(BinOp::Or, a, b);
}
Future operator^(const Future &a, const Future &b) {
    return bin_op(BinOp::Xor, a, b);
}
Future operator+(const Future &a, std::int64_t b) {
    return bin_op(BinOp::Add, a, b);
}
Future operator-(const Future &a, std::int64_t b) {
    return bin_op(BinOp::Sub, a, b);
}
Future eq(const Future &a, const Future &b) {
    return bin_op(BinOp::Eq, a, b);
}
Future ne(const Future &a, const Future &b) {
    return bin_op(BinOp::Ne, a, b);
}
Future lt(const Future &a, const Future &b) {
    return bin_op(BinOp::Lt, a, b);
}
Future le(const Future &a, const Future &b) {
    return bin_op(BinOp::Le, a, b);
}
Future gt(const Future &a, const Future &b) {
    return bin_op(BinOp::Gt, a, b);
}
Future ge(const Future &a, const Future &b) {
    return bin_op(BinOp::Ge, a, b);
}
Future eq(const Future &a, std::int64_t b) {
    return bin_op(BinOp::Eq, a, b);
}

}  // namespace qcrt
