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

#ifndef QCRT_RUNTIME_H
#define QCRT_RUNTIME_H

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qcrt/coupling.h"
#include "qcrt/gate.h"
#include "qcrt/ir.h"
#include "qcrt/simulator.h"

namespace qcrt {

using NodeId = std::uint32_t;

/// Runtime AST. Nodes live in a per-process arena in recording order.
namespace ast {

/// Link from a node to the previous node on one qubit's chain.
struct QubitLink {
    std::uint32_t qubit;
    NodeId prev;
};

struct Alloc {
    std::uint32_t qubit;
};
struct Free {
    std::uint32_t qubit;
    NodeId prev;
};
struct Gate {
    GateSpec gate;
    std::vector<std::uint32_t> controls;  // sorted
    std::uint32_t target;
    std::vector<QubitLink> prev;
};
/// The measured qubits' chains attach here as parents of the result future.
struct Measure {
    std::vector<std::uint32_t> qubits;
    std::vector<QubitLink> prev;
};
struct IntLiteral {
    std::int64_t value;
};
struct BinOpNode {
    BinOp op;
    NodeId lhs;
    NodeId rhs;
};
/// Mutable runtime variable (e.g. a loop counter), updated by Assign nodes.
struct Var {
    std::int64_t init;
};
struct Assign {
    NodeId var;
    NodeId value;
};
struct IfBegin {
    NodeId cond;
};
struct IfElse {};
struct IfEnd {};
struct WhileBegin {};
struct WhileTest {
    NodeId cond;
};
struct WhileEnd {};

using Node = std::variant<Alloc, Free, Gate, Measure, IntLiteral, BinOpNode, Var, Assign, IfBegin, IfElse, IfEnd,
                          WhileBegin, WhileTest, WhileEnd>;

}  // namespace ast

enum class QubitStatus : std::uint8_t { Allocated, Measured, Freed };
enum class ProcessState : std::uint8_t { Building, Executed };
enum class Backend : std::uint8_t { Code, Assembly };

struct ProcessOptions {
    /// Code runs the generated quantum code directly on the simulator;
    /// Assembly runs it through the compiler pipeline first.
    Backend backend = Backend::Code;
    std::optional<ir::CouplingGraph> coupling;
    sim::RunOptions run;
};

namespace detail {
struct ProcessData;
}

/// Handle to one logical qubit. Move-only: qubit state cannot be copied, and
/// neither can the handle.
class Qubit {
   public:
    Qubit(Qubit &&) noexcept = default;
    Qubit &operator=(Qubit &&) noexcept = default;
    Qubit(const Qubit &) = delete;
    Qubit &operator=(const Qubit &) = delete;

    std::uint32_t index() const noexcept {
        return index_;
    }
    std::uint64_t process_id() const noexcept {
        return process_id_;
    }

   private:
    friend struct detail::ProcessData;
    Qubit(std::uint32_t index, std::uint64_t process_id) : index_(index), process_id_(process_id) {
    }

    std::uint32_t index_;
    std::uint64_t process_id_;
};

using QubitList = std::initializer_list<std::reference_wrapper<const Qubit>>;

/// Promise of a classical 64-bit value, fulfilled when its process executes.
class Future {
   public:
    NodeId node() const noexcept {
        return node_;
    }
    std::uint64_t process_id() const noexcept;
    bool is_fulfilled() const;
    /// Demands the value, executing the owning process if needed.
    std::int64_t value() const;

   private:
    friend struct detail::ProcessData;
    friend class Process;
    friend Future bin_op(BinOp op, const Future &a, const Future &b);
    friend Future bin_op(BinOp op, const Future &a, std::int64_t b);
    Future(std::shared_ptr<detail::ProcessData> data, NodeId node) : data_(std::move(data)), node_(node) {
    }

    std::shared_ptr<detail::ProcessData> data_;
    NodeId node_;
};

/// One independent quantum execution: records operations into a runtime AST
/// and runs them, once, when a future's value is demanded.
class Process {
   public:
    explicit Process(std::uint64_t seed, ProcessOptions options = {});
    Process(Process &&) noexcept = default;
    Process &operator=(Process &&) noexcept = default;
    Process(const Process &) = delete;
    Process &operator=(const Process &) = delete;

    std::uint64_t id() const noexcept;
    std::uint64_t seed() const noexcept;
    ProcessState state() const noexcept;
    const ProcessOptions &options() const noexcept;

    Qubit alloc();
    std::vector<Qubit> alloc(std::size_t count);
    /// Requires the qubit to have been measured.
    void free(const Qubit &q);

    /// Applies `gate`, controlled by every qubit in the active ctrl scopes.
    void gate(GateSpec gate, const Qubit &target);
    void x(const Qubit &q) {
        gate({GateKind::X}, q);
    }
    void y(const Qubit &q) {
        gate({GateKind::Y}, q);
    }
    void z(const Qubit &q) {
        gate({GateKind::Z}, q);
    }
    void h(const Qubit &q) {
        gate({GateKind::H}, q);
    }
    void s(const Qubit &q) {
        gate({GateKind::S}, q);
    }
    void t(const Qubit &q) {
        gate({GateKind::T}, q);
    }
    void cnot(const Qubit &control, const Qubit &target);

    void ctrl(QubitList controls, const std::function<void()> &block);
    void ctrl(std::span<const Qubit> controls, const std::function<void()> &block);
    /// Records `block` inverted: gates in reverse order, each replaced by its inverse.
    void adj(const std::function<void()> &block);

    Future measure(const Qubit &q);
    /// qs[0] lands in the most significant bit of the result.
    Future measure(QubitList qs);
    Future measure(std::span<const Qubit> qs);

    Future lift(std::int64_t value);
    Future var(std::int64_t init);
    void assign(const Future &var, const Future &value);

    /// Conditions with no measurement behind them are resolved right away and
    /// only the chosen block is recorded; otherwise both are recorded and the
    /// branch happens during quantum execution.
    void if_then_else(const Future &cond, const std::function<void()> &then_block,
                      const std::function<void()> &else_block);
    void if_then(const Future &cond, const std::function<void()> &then_block);
    /// Quantum-side loop. The condition must depend on a measurement.
    void while_loop(const std::function<Future()> &cond_block, const std::function<void()> &body);

    /// RY(theta) then RZ(phi): cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> up
    /// to global phase, for a qubit still in |0>.
    void prepare_bloch(double theta, double phi, const Qubit &q);

    std::int64_t value(const Future &f);
    /// Generates, compiles and runs code for all `demanded` futures at once.
    void execute(std::span<const Future> demanded);

    // Introspection.
    const std::vector<ast::Node> &nodes() const noexcept;
    QubitStatus status(const Qubit &q) const;
    /// Nodes on q's chain, newest first, ending at its Alloc node.
    std::vector<NodeId> qubit_chain(const Qubit &q) const;
    /// Debug view of the simulator state after execution (nullptr before).
    const sim::SimState *final_state() const noexcept;
    /// The program that was executed (after compilation when the backend is Assembly).
    const ir::QuantumCode *executed_code() const noexcept;

   private:
    std::shared_ptr<detail::ProcessData> data_;
};

Future bin_op(BinOp op, const Future &a, const Future &b);
Future bin_op(BinOp op, const Future &a, std::int64_t b);

Future operator+(const Future &a, const Future &b);
Future operator-(const Future &a, const Future &b);
Future operator*(const Future &a, const Future &b);
Future operator/(const Future &a, const Future &b);
Future operator%(const Future &a, const Future &b);
Future operator<<(const Future &a, const Future &b);
Future operator>>(const Future &a, const Future &b);
Future operator&(const Future &a, const Future &b);
Future operator|(const Future &a, const Future &b);
Future operator^(const Future &a, const Future &b);
Future operator+(const Future &a, std::int64_t b);
Future operator-(const Future &a, std::int64_t b);

// Comparisons yield 0/1 futures. Named functions rather than operators so
// that Future stays usable with ordinary equality tooling.
Future eq(const Future &a, const Future &b);
Future ne(const Future &a, const Future &b);
Future lt(const Future &a, const Future &b);
Future le(const Future &a, const Future &b);
Future gt(const Future &a, const Future &b);
Future ge(const Future &a, const Future &b);
Future eq(const Future &a, std::int64_t b);

}  // namespace qcrt

#endif
