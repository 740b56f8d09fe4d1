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

// Acceptance gate. Prints one line per criterion and exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qcrt/codegen.h"
#include "qcrt/compiler.h"
#include "qcrt/error.h"
#include "qcrt/examples.h"
#include "qcrt/ir.h"
#include "qcrt/runtime.h"
#include "qcrt/simulator.h"
#include "support/oracle.h"
#include "support/random_programs.h"

using namespace qcrt;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
    std::ostringstream ss;
    ss.precision(digits);
    ss << std::fixed << v;
    return ss.str();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

std::size_t count_if_inst(const ir::QuantumCode &code, const std::function<bool(const ir::Instruction &)> &pred) {
    std::size_t n = 0;
    for (const auto &inst : code.instructions) {
        n += pred(inst);
    }
    return n;
}

bool is_plain_x(const ir::Instruction &inst) {
    auto *g = std::get_if<ir::Gate>(&inst);
    return g && g->gate.kind == GateKind::X && g->controls.empty();
}

bool is_branch(const ir::Instruction &inst) {
    return std::holds_alternative<ir::Br>(inst) || std::holds_alternative<ir::Jmp>(inst);
}

// 1 -------------------------------------------------------------------------

Outcome teleport_golden() {
    auto start = Clock::now();
    Process p(1);
    Qubit a = p.alloc();
    p.h(a);
    auto t = examples::teleport(p, a);
    Future final_measure = p.measure(t.target);
    auto code = codegen::build_code(p, std::vector<Future>{final_measure}).code;
    double elapsed = seconds_since(start);

    // Expected listing, with qubits a, q0, q1 renamed in allocation order and
    // each conditional correction written as br / label / gate / label.
    const std::vector<std::string> expected = {
        "alloc q0",       "gate h q0",        "alloc q1",         "alloc q2",         "gate h q1",
        "gate x ctrl q1, q2", "gate x ctrl q0, q1", "gate h q0",    "measure q0 -> i0", "measure q1 -> i1",
        "br i0 @L0 @L1",  "label @L0",        "gate z q2",        "label @L1",        "br i1 @L2 @L3",
        "label @L2",      "gate x q2",        "label @L3",        "measure q2 -> i2", "out i2",
    };
    std::vector<std::string> got;
    for (const auto &inst : code.instructions) {
        got.push_back(ir::serialize(inst));
    }
    bool match = got == expected;
    return {match && elapsed < 1.0, std::string(match ? "exact match" : "MISMATCH:\n" + ir::serialize(code)) +
                                        ", " + fmt(elapsed * 1000, 2) + " ms"};
}

// 2 -------------------------------------------------------------------------

Outcome teleport_identity() {
    const double theta = 1.2345, phi = 0.6789;
    const test_support::Amplitude want0 = std::cos(theta / 2), want1 = std::polar(std::sin(theta / 2), phi);
    double worst = 1.0;
    std::set<int> branches;
    for (std::uint64_t seed = 0; seed < 100; seed++) {
        Process p(seed);
        Qubit a = p.alloc();
        p.prepare_bloch(theta, phi, a);
        auto t = examples::teleport(p, a);
        p.execute(std::vector<Future>{t.m0, t.m1});
        auto m0 = t.m0.value(), m1 = t.m1.value();
        branches.insert(static_cast<int>(m0 * 2 + m1));
        // IR qubits: q0 = a, q1 = bell half, q2 = target. Bit k of the canonical
        // index is qk.
        auto amps = test_support::canonical_amplitudes(*p.final_state());
        std::uint64_t base = static_cast<std::uint64_t>(m0) | (static_cast<std::uint64_t>(m1) << 1);
        test_support::Amplitude t0 = amps[base], t1 = amps[base | 4];
        double fidelity = std::norm(std::conj(want0) * t0 + std::conj(want1) * t1);
        worst = std::min(worst, fidelity);
    }
    bool pass = worst >= 1 - 1e-9 && branches.size() == 4;
    return {pass, "min fidelity 1-" + sci(1 - worst) + ", branches seen " + std::to_string(branches.size())};
}

// 3 -------------------------------------------------------------------------

Outcome branch_elision() {
    auto code_for = [](std::int64_t c0, std::int64_t c1) {
        Process p(1);
        auto [q0, q1] = examples::bell(p, p.lift(c0), p.lift(c1));
        Future m = p.measure({q0, q1});
        return codegen::build_code(p, std::vector<Future>{m}).code;
    };
    auto c00 = code_for(0, 0);
    auto c10 = code_for(1, 0);
    auto x00 = count_if_inst(c00, is_plain_x), br00 = count_if_inst(c00, is_branch);
    auto x10 = count_if_inst(c10, is_plain_x), br10 = count_if_inst(c10, is_branch);
    bool pass = x00 == 0 && br00 == 0 && x10 == 1 && br10 == 0;
    return {pass, "bell(0,0): " + std::to_string(x00) + " X, " + std::to_string(br00) + " branches; bell(1,0): " +
                      std::to_string(x10) + " X, " + std::to_string(br10) + " branches"};
}

// 4 -------------------------------------------------------------------------

Outcome measurement_statistics() {
    auto freq0 = [](GateSpec g) {
        int zeros = 0;
        for (std::uint64_t seed = 0; seed < 10000; seed++) {
            Process p(seed);
            Qubit q = p.alloc();
            p.gate(g, q);
            zeros += p.measure(q).value() == 0;
        }
        return zeros / 10000.0;
    };
    double h = freq0({GateKind::H});
    double ry = freq0({GateKind::RY, std::acos(-1.0) / 3});
    bool pass = h >= 0.47 && h <= 0.53 && ry >= 0.72 && ry <= 0.78;
    return {pass, "H f(0)=" + fmt(h) + " in [0.47,0.53], RY(pi/3) f(0)=" + fmt(ry) + " in [0.72,0.78]"};
}

// 5 -------------------------------------------------------------------------

Outcome bell_correlation() {
    int exceptions = 0, zeros = 0;
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        Process p(seed);
        auto v = examples::bell_program(p)[0].value();
        exceptions += v != 0 && v != 3;
        zeros += v == 0;
    }
    return {exceptions == 0, std::to_string(exceptions) + " outcomes outside {0,3}, f(0)=" + fmt(zeros / 10000.0)};
}

// 6 -------------------------------------------------------------------------

ir::QuantumCode with_final_measures(ir::QuantumCode code) {
    for (ir::QubitId q = 0; q < code.qubit_count; q++) {
        ir::RegId r = code.reg_count++;
        code.instructions.push_back(ir::Measure{{q}, r});
        code.instructions.push_back(ir::Out{r});
    }
    return code;
}

Outcome optimizer_soundness() {
    auto start = Clock::now();
    std::mt19937_64 rng(6);
    using Pass = std::function<ir::QuantumCode(const ir::QuantumCode &)>;
    const std::vector<std::pair<std::string, Pass>> passes = {
        {"cancel", compiler::cancel_inverse_pairs},
        {"merge", compiler::merge_rotations},
        {"decompose", compiler::decompose_multictrl},
        {"pipeline", [](const ir::QuantumCode &c) { return compiler::emit_assembly(c); }},
    };
    double worst = 0;
    int out_mismatches = 0, conditionals = 0, rewritten = 0;
    for (int i = 0; i < 100; i++) {
        auto base = test_support::random_circuit(rng, {.max_qubits = 5, .max_gates = 20, .max_controls = 3,
                                                  .conditional_probability = 0.5, .measure_all = false});
        conditionals += count_if_inst(base, [](const ir::Instruction &x) { return std::holds_alternative<ir::Br>(x); });
        auto measured = with_final_measures(base);
        rewritten += compiler::emit_assembly(base).instructions != base.instructions;
        for (std::uint64_t seed = 0; seed < 3; seed++) {
            auto ref_state = test_support::canonical_amplitudes(sim::run(base, seed).state);
            auto ref_out = sim::run(measured, seed).outputs;
            for (const auto &[name, pass] : passes) {
                auto state = test_support::canonical_amplitudes(sim::run(pass(base), seed).state);
                worst = std::max(worst, test_support::phase_insensitive_distance(ref_state, state));
                out_mismatches += sim::run(pass(measured), seed).outputs != ref_out;
            }
        }
    }
    double elapsed = seconds_since(start);
    bool pass = worst <= 1e-9 && out_mismatches == 0 && elapsed < 30.0;
    return {pass, "max 1-|<a|b>| " + sci(worst) + ", OUT mismatches " + std::to_string(out_mismatches) + ", " +
                      std::to_string(rewritten) + "/100 programs rewritten, " + std::to_string(conditionals) +
                      " with a conditional, " + fmt(elapsed, 2) + " s"};
}

// 7 -------------------------------------------------------------------------

Outcome decomposition_oracle() {
    double worst = 0;
    bool clean_all = true;
    for (std::uint32_t controls : {2u, 3u}) {
        ir::QuantumCode code;
        std::vector<ir::QubitId> cs;
        for (std::uint32_t q = 0; q <= controls; q++) {
            code.instructions.push_back(ir::Alloc{q});
            if (q < controls) {
                cs.push_back(q);
            }
        }
        code.instructions.push_back(ir::Gate{{GateKind::X}, cs, controls});
        code.recount();
        auto lowered = compiler::decompose_multictrl(code);
        bool clean = false;
        auto u = test_support::probe_unitary(lowered, controls + 1, &clean);
        clean_all = clean_all && clean;
        std::uint64_t cmask = (std::uint64_t{1} << controls) - 1;
        for (std::uint64_t c = 0; c < u.size(); c++) {
            std::uint64_t image = (c & cmask) == cmask ? c ^ (std::uint64_t{1} << controls) : c;
            for (std::uint64_t r = 0; r < u.size(); r++) {
                worst = std::max(worst, std::abs(u[c][r] - (r == image ? 1.0 : 0.0)));
            }
        }
    }
    return {worst <= 1e-9 && clean_all,
            "max entry error " + sci(worst) + (clean_all ? ", ancillas restored" : ", ANCILLA DIRTY")};
}

// 8 -------------------------------------------------------------------------

Outcome mapping_validity() {
    auto graph = ir::CouplingGraph::line(5);
    std::mt19937_64 rng(8);
    int off_edge = 0, routed = 0;
    double worst_tv = 0;
    for (int i = 0; i < 50; i++) {
        auto code = test_support::random_circuit(rng, {.max_qubits = 4, .max_gates = 20, .max_controls = 2});
        auto assembly = compiler::emit_assembly(code, &graph);
        auto unmapped = compiler::emit_assembly(code);
        auto cx_count = [](const ir::QuantumCode &c) {
            return count_if_inst(c, [](const ir::Instruction &x) {
                auto *g = std::get_if<ir::Gate>(&x);
                return g && !g->controls.empty();
            });
        };
        routed += cx_count(assembly) > cx_count(unmapped);
        for (const auto &inst : assembly.instructions) {
            if (auto *g = std::get_if<ir::Gate>(&inst)) {
                for (auto c : g->controls) {
                    off_edge += !graph.adjacent(c, g->target);
                }
            }
        }
        worst_tv = std::max(worst_tv, test_support::total_variation(test_support::exact_distribution(code),
                                                                test_support::exact_distribution(assembly)));
    }
    return {off_edge == 0 && worst_tv <= 1e-9,
            std::to_string(off_edge) + " CX off-edge, " + std::to_string(routed) +
                "/50 programs needed swaps, max TV distance " + sci(worst_tv)};
}

// 9 -------------------------------------------------------------------------

Outcome quantum_loop() {
    Process probe(0);
    auto code = codegen::build_code(probe, examples::coinloop_program(probe)).code;
    std::map<std::string, std::size_t> label_at;
    for (std::size_t i = 0; i < code.instructions.size(); i++) {
        if (auto *l = std::get_if<ir::Label>(&code.instructions[i])) {
            label_at[l->name] = i;
        }
    }
    bool has_br = count_if_inst(code, [](const ir::Instruction &x) { return std::holds_alternative<ir::Br>(x); }) > 0;
    bool back_edge = false;
    for (std::size_t i = 0; i < code.instructions.size(); i++) {
        if (auto *j = std::get_if<ir::Jmp>(&code.instructions[i])) {
            back_edge = back_edge || label_at.at(j->target) < i;
        }
    }
    double total = 0;
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        Process p(seed);
        total += static_cast<double>(examples::coinloop_program(p)[0].value());
    }
    double mean = total / 10000.0;
    bool pass = has_br && back_edge && mean >= 1.9 && mean <= 2.1;
    return {pass, std::string(back_edge && has_br ? "cycle present" : "NO CYCLE") + ", mean iterations " + fmt(mean)};
}

// 10 ------------------------------------------------------------------------

Outcome grover() {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        Process p(seed);
        hits += examples::grover3_program(p)[0].value() == 7;
    }
    double f = hits / 10000.0;
    return {f >= 0.93 && f <= 0.96, "f(111)=" + fmt(f) + " in [0.93,0.96]"};
}

// 11 ------------------------------------------------------------------------

std::string capture(const std::string &command) {
    std::string out;
    FILE *pipe = popen(command.c_str(), "r");
    if (!pipe) {
        return "<popen failed>";
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        out.append(buf, n);
    }
    int status = pclose(pipe);
    return out + "<exit " + std::to_string(status) + ">";
}

Outcome determinism_and_round_trip() {
    int report_mismatches = 0;
    for (const auto &example : examples::names()) {
        for (const char *level : {"code", "asm"}) {
            std::string cmd = std::string(QCRT_CLI_PATH) + " run " + example + " --seed 17 --shots 300 --level " +
                              level + " --dump-ir 2>&1";
            auto a = capture(cmd), b = capture(cmd);
            report_mismatches += a != b || a.find("total 300") == std::string::npos;
        }
    }
    std::mt19937_64 rng(11);
    int round_trip_failures = 0;
    for (int i = 0; i < 1000; i++) {
        auto code = test_support::random_text_program(rng);
        try {
            round_trip_failures += ir::parse(ir::serialize(code)) != code;
        } catch (const Error &) {
            round_trip_failures++;
        }
    }
    return {report_mismatches == 0 && round_trip_failures == 0,
            std::to_string(report_mismatches) + " report mismatches over 8 CLI runs, " +
                std::to_string(round_trip_failures) + "/1000 round-trip failures"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"teleportation golden IR", teleport_golden},
        {"teleportation is the identity channel", teleport_identity},
        {"classical-branch elision", branch_elision},
        {"measurement statistics", measurement_statistics},
        {"Bell correlation", bell_correlation},
        {"optimizer soundness", optimizer_soundness},
        {"decomposition oracle", decomposition_oracle},
        {"mapping validity", mapping_validity},
        {"quantum-side loop", quantum_loop},
        {"Grover desk-scale", grover},
        {"determinism and round-trip", determinism_and_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
