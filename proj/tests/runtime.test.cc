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

#include <cmath>

#include "gtest/gtest.h"

#include "qcrt/codegen.h"
#include "qcrt/error.h"

using namespace qcrt;

namespace {

template <typename F>
ErrorCode error_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::Io;
}

template <typename T>
std::size_t count_nodes(const Process &p) {
    std::size_t n = 0;
    for (const auto &node : p.nodes()) {
        n += std::holds_alternative<T>(node);
    }
    return n;
}

}  // namespace

TEST(Process, measure_packs_bits_msb_first) {
    Process p(1);
    auto q = p.alloc(3);
    p.x(q[0]);
    p.x(q[2]);
    Future a = p.measure(q);
    EXPECT_EQ(a.value(), 5);
    EXPECT_TRUE(a.is_fulfilled());
    EXPECT_EQ(p.state(), ProcessState::Executed);
}

TEST(Process, value_triggers_one_batch_execution) {
    Process p(3);
    Qubit a = p.alloc();
    Qubit b = p.alloc();
    p.h(a);
    p.cnot(a, b);
    Future ma = p.measure(a);
    Future mb = p.measure(b);
    Future both = ma + mb;
    std::int64_t v = ma.value();
    EXPECT_EQ(mb.value(), v);
    EXPECT_EQ(both.value(), 2 * v);
    EXPECT_EQ(error_of([&] { p.alloc(); }), ErrorCode::ProcessAlreadyExecuted);
}

TEST(Process, classical_futures_evaluate_without_running) {
    Process p(1);
    Future f = (p.lift(6) * p.lift(7)) - 2;
    EXPECT_EQ(f.value(), 40);
    EXPECT_EQ(p.state(), ProcessState::Building);
    EXPECT_EQ(eq(p.lift(3), 3).value(), 1);
    EXPECT_EQ(lt(p.lift(3), p.lift(2)).value(), 0);
    EXPECT_EQ((p.lift(1) << p.lift(4)).value(), 16);
    EXPECT_EQ(error_of([&] { (p.lift(1) / p.lift(0)).value(); }), ErrorCode::DivisionByZero);
}

TEST(Process, adjoint_reverses_and_inverts) {
    Process p(1);
    Qubit q = p.alloc();
    p.adj([&] {
        p.h(q);
        p.s(q);
        p.t(q);
        p.gate({GateKind::RX, 0.3}, q);
    });
    std::vector<GateSpec> got;
    for (const auto &node : p.nodes()) {
        if (auto *g = std::get_if<ast::Gate>(&node)) {
            got.push_back(g->gate);
        }
    }
    EXPECT_EQ(got, (std::vector<GateSpec>{{GateKind::RX, -0.3}, {GateKind::TD}, {GateKind::SD}, {GateKind::H}}));
}

TEST(Process, adjoint_is_an_involution) {
    auto record = [](bool twice) {
        Process p(1);
        Qubit a = p.alloc();
        Qubit b = p.alloc();
        auto body = [&] {
            p.h(a);
            p.t(b);
            p.cnot(a, b);
            p.gate({GateKind::RY, 0.4}, b);
        };
        if (twice) {
            p.adj([&] { p.adj(body); });
        } else {
            body();
        }
        std::vector<ast::Node> nodes = p.nodes();
        std::vector<std::tuple<GateSpec, std::vector<std::uint32_t>, std::uint32_t>> gates;
        for (const auto &node : nodes) {
            if (auto *g = std::get_if<ast::Gate>(&node)) {
                gates.emplace_back(g->gate, g->controls, g->target);
            }
        }
        return gates;
    };
    EXPECT_EQ(record(true), record(false));
}

TEST(Process, nested_controls_flatten) {
    Process p(1);
    auto q = p.alloc(4);
    p.ctrl({q[2]}, [&] { p.ctrl({q[0]}, [&] { p.ctrl({q[1]}, [&] { p.x(q[3]); }); }); });
    const auto *g = std::get_if<ast::Gate>(&p.nodes().back());
    ASSERT_NE(g, nullptr);
    EXPECT_EQ(g->controls, (std::vector<std::uint32_t>{0, 1, 2}));
    EXPECT_EQ(g->target, 3u);
}

TEST(Process, control_errors) {
    Process p(1);
    auto q = p.alloc(3);
    EXPECT_EQ(error_of([&] { p.ctrl({q[0]}, [&] { p.x(q[0]); }); }), ErrorCode::TargetIsControl);
    EXPECT_EQ(error_of([&] { p.ctrl({q[0]}, [&] { p.ctrl({q[0]}, [&] { p.x(q[1]); }); }); }),
              ErrorCode::OverlappingControls);
    EXPECT_EQ(error_of([&] { p.ctrl({q[0]}, [&] { p.measure(q[1]); }); }), ErrorCode::MeasureInsideCtrl);
    EXPECT_EQ(error_of([&] { p.adj([&] { p.measure(q[1]); }); }), ErrorCode::NonUnitaryInAdjoint);
    EXPECT_EQ(error_of([&] { p.adj([&] { p.alloc(); }); }), ErrorCode::AllocInsideAdjoint);
}

TEST(Process, failed_block_leaves_no_trace) {
    Process p(1);
    auto q = p.alloc(2);
    std::size_t before = p.nodes().size();
    EXPECT_THROW(p.ctrl({q[0]},
                        [&] {
                            p.x(q[1]);
                            p.x(q[0]);
                        }),
                 Error);
    EXPECT_EQ(p.nodes().size(), before);
    p.ctrl({q[0]}, [&] { p.x(q[1]); });
    EXPECT_EQ(std::get<ast::Gate>(p.nodes().back()).controls, (std::vector<std::uint32_t>{0}));
}

TEST(Process, qubit_lifecycle) {
    Process p(1);
    Qubit q = p.alloc();
    EXPECT_EQ(p.status(q), QubitStatus::Allocated);
    EXPECT_EQ(error_of([&] { p.free(q); }), ErrorCode::FreeUnmeasured);
    p.h(q);
    p.measure(q);
    EXPECT_EQ(p.status(q), QubitStatus::Measured);
    EXPECT_EQ(error_of([&] { p.x(q); }), ErrorCode::QubitNotAllocated);
    p.free(q);
    EXPECT_EQ(p.status(q), QubitStatus::Freed);
    EXPECT_EQ(error_of([&] { p.free(q); }), ErrorCode::DoubleFree);
    EXPECT_EQ(error_of([&] { p.measure(std::span<const Qubit>{}); }), ErrorCode::EmptyMeasure);
}

TEST(Process, qubit_chain_links_nodes_newest_first) {
    Process p(1);
    Qubit a = p.alloc();
    Qubit b = p.alloc();
    p.h(a);
    p.cnot(a, b);
    p.x(b);
    p.measure(a);
    auto chain = p.qubit_chain(a);
    ASSERT_EQ(chain.size(), 4u);
    EXPECT_TRUE(std::holds_alternative<ast::Measure>(p.nodes()[chain[0]]));
    EXPECT_TRUE(std::holds_alternative<ast::Gate>(p.nodes()[chain[1]]));
    EXPECT_TRUE(std::holds_alternative<ast::Gate>(p.nodes()[chain[2]]));
    EXPECT_TRUE(std::holds_alternative<ast::Alloc>(p.nodes()[chain[3]]));
    EXPECT_EQ(p.qubit_chain(b).size(), 3u);
}

TEST(Process, foreign_handles) {
    Process p(1);
    Process other(2);
    Qubit mine = p.alloc();
    Qubit theirs = other.alloc();
    EXPECT_EQ(error_of([&] { p.x(theirs); }), ErrorCode::ForeignQubit);
    EXPECT_EQ(error_of([&] { p.lift(1) + other.lift(2); }), ErrorCode::CrossProcessOperands);
    Future f = other.measure(theirs);
    EXPECT_EQ(error_of([&] { p.if_then(f, [] {}); }), ErrorCode::ForeignFuture);
    p.x(mine);
}

TEST(Process, classical_condition_is_resolved_while_building) {
    Process p(1);
    Qubit q = p.alloc();
    std::size_t before = p.nodes().size();
    p.if_then_else(
        eq(p.lift(2), 3), [&] { p.x(q); }, [&] { p.h(q); });
    EXPECT_EQ(count_nodes<ast::IfBegin>(p), 0u);
    const auto *g = std::get_if<ast::Gate>(&p.nodes().back());
    ASSERT_NE(g, nullptr);
    EXPECT_EQ(g->gate.kind, GateKind::H);
    EXPECT_GT(p.nodes().size(), before);
}

TEST(Process, quantum_condition_records_both_branches) {
    Process p(1);
    Qubit a = p.alloc();
    Qubit b = p.alloc();
    p.h(a);
    Future m = p.measure(a);
    p.if_then_else(
        m, [&] { p.x(b); }, [&] { p.z(b); });
    EXPECT_EQ(count_nodes<ast::IfBegin>(p), 1u);
    EXPECT_EQ(count_nodes<ast::IfElse>(p), 1u);
    EXPECT_EQ(count_nodes<ast::IfEnd>(p), 1u);
    Future mb = p.measure(b);
    p.execute(std::vector<Future>{m, mb});
    EXPECT_EQ(mb.value(), m.value());
}

TEST(Process, branch_and_loop_restrictions) {
    Process p(1);
    Qubit a = p.alloc();
    p.h(a);
    Future m = p.measure(a);
    EXPECT_EQ(error_of([&] { p.if_then(m, [&] { p.alloc(); }); }), ErrorCode::AllocInBranch);
    EXPECT_EQ(error_of([&] { p.while_loop([&] { return p.lift(0); }, [] {}); }), ErrorCode::ClassicalConditionLoop);
    EXPECT_EQ(error_of([&] {
                  p.while_loop(
                      [&] {
                          Qubit c = p.alloc();
                          p.h(c);
                          return p.measure(c);
                      },
                      [] {});
              }),
              ErrorCode::LoopQubitLeak);
}

TEST(Process, quantum_loop_runs_until_condition_fails) {
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        Process p(seed);
        Future count = p.var(0);
        p.while_loop(
            [&] {
                Qubit c = p.alloc();
                p.h(c);
                Future m = p.measure(c);
                p.free(c);
                p.assign(count, count + 1);
                return eq(m, 0);
            },
            [] {});
        EXPECT_GE(count.value(), 1);
    }
}

TEST(Process, futures_outside_executed_cone) {
    Process p(1);
    Qubit a = p.alloc();
    Qubit b = p.alloc();
    p.x(a);
    Future ma = p.measure(a);
    Future mb = p.measure(b);
    p.execute(std::vector<Future>{ma});
    EXPECT_EQ(ma.value(), 1);
    EXPECT_FALSE(mb.is_fulfilled());
    EXPECT_EQ(error_of([&] { mb.value(); }), ErrorCode::NotInCone);
    EXPECT_EQ(error_of([&] { p.execute(std::vector<Future>{ma}); }), ErrorCode::ProcessAlreadyExecuted);
}

TEST(Process, post_execution_arithmetic_on_fulfilled_values) {
    Process p(1);
    Qubit a = p.alloc();
    p.x(a);
    Future m = p.measure(a);
    EXPECT_EQ(m.value(), 1);
    EXPECT_EQ((m + 41).value(), 42);
}

TEST(Process, prepare_bloch_state) {
    Process p(4);
    Qubit q = p.alloc();
    p.prepare_bloch(1.0, 0.5, q);
    Qubit anchor = p.alloc();
    Future m = p.measure(anchor);
    // q shares no gate with the demanded qubit, so only an unpruned build keeps it.
    auto code = codegen::build_code(p, std::vector<Future>{m}, {.prune = false}).code;
    auto run = sim::run(code, 4);
    // q is the first allocated qubit, so it is the high bit; anchor measured 0.
    auto amp0 = run.state.amplitudes()[0], amp1 = run.state.amplitudes()[2];
    EXPECT_NEAR(std::abs(amp0), std::cos(0.5), 1e-12);
    EXPECT_NEAR(std::abs(amp1), std::sin(0.5), 1e-12);
    EXPECT_NEAR(std::arg(amp1 / amp0), 0.5, 1e-12);
}

TEST(Process, empty_demand) {
    Process p(1);
    EXPECT_EQ(error_of([&] { p.execute(std::vector<Future>{}); }), ErrorCode::EmptyDemand);
}
