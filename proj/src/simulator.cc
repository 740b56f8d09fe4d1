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

#include "qcrt/simulator.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "qcrt/error.h"

namespace qcrt::sim {

namespace {

constexpr double kBasisTolerance = 1e-9;

std::string qname(ir::QubitId q) {
    return "q" + std::to_string(q);
}

}  // namespace

bool SimState::is_live(ir::QubitId qubit) const {
    return std::find(live_.begin(), live_.end(), qubit) != live_.end();
}

std::uint64_t SimState::mask_of(ir::QubitId qubit) const {
    auto it = std::find(live_.begin(), live_.end(), qubit);
    if (it == live_.end()) {
        throw Error(ErrorCode::QubitNotLive, qname(qubit) + " is not allocated");
    }
    auto pos = static_cast<std::uint64_t>(it - live_.begin());
    return std::uint64_t{1} << (live_.size() - 1 - pos);
}

void SimState::alloc(ir::QubitId qubit) {
    if (is_live(qubit)) {
        throw Error(ErrorCode::QubitAlreadyLive, qname(qubit) + " is already allocated");
    }
    if (live_.size() + 1 > max_qubits_) {
        throw Error(ErrorCode::QubitLimitExceeded,
                    "allocating " + qname(qubit) + " exceeds the " + std::to_string(max_qubits_) + "-qubit limit");
    }
    std::vector<Complex> next(amplitudes_.size() * 2, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < amplitudes_.size(); k++) {
        next[k << 1] = amplitudes_[k];
    }
    amplitudes_ = std::move(next);
    live_.push_back(qubit);
}

void SimState::free(ir::QubitId qubit) {
    std::uint64_t mask = mask_of(qubit);
    double p1 = probability_of_one(qubit);
    int bit;
    if (p1 <= kBasisTolerance) {
        bit = 0;
    } else if (p1 >= 1.0 - kBasisTolerance) {
        bit = 1;
    } else {
        throw Error(ErrorCode::FreeNotBasisState, qname(qubit) + " is not in a basis state (P(1)=" +
                                                      std::to_string(p1) + ")");
    }
    double weight = bit ? p1 : 1.0 - p1;
    double scale = 1.0 / std::sqrt(weight);
    std::uint64_t low = mask - 1;
    std::vector<Complex> next(amplitudes_.size() / 2);
    for (std::uint64_t k = 0; k < next.size(); k++) {
        std::uint64_t full = ((k & ~low) << 1) | (k & low) | (bit ? mask : 0);
        next[k] = amplitudes_[full] * scale;
    }
    amplitudes_ = std::move(next);
    live_.erase(std::find(live_.begin(), live_.end(), qubit));
}

void SimState::apply(const GateSpec &gate, std::span<const ir::QubitId> controls, ir::QubitId target) {
    std::uint64_t tmask = mask_of(target);
    std::uint64_t cmask = 0;
    for (auto c : controls) {
        cmask |= mask_of(c);
    }
    Matrix2 m = gate.matrix();
    for (std::uint64_t k = 0; k < amplitudes_.size(); k++) {
        if ((k & tmask) || (k & cmask) != cmask) {
            continue;
        }
        Complex a0 = amplitudes_[k];
        Complex a1 = amplitudes_[k | tmask];
        amplitudes_[k] = m[0] * a0 + m[1] * a1;
        amplitudes_[k | tmask] = m[2] * a0 + m[3] * a1;
    }
}

double SimState::probability_of_one(ir::QubitId qubit) const {
    std::uint64_t mask = mask_of(qubit);
    double p = 0;
    for (std::uint64_t k = 0; k < amplitudes_.size(); k++) {
        if (k & mask) {
            p += std::norm(amplitudes_[k]);
        }
    }
    return p;
}

void SimState::collapse(ir::QubitId qubit, int bit) {
    std::uint64_t mask = mask_of(qubit);
    double p1 = probability_of_one(qubit);
    double weight = bit ? p1 : 1.0 - p1;
    double scale = 1.0 / std::sqrt(weight);
    for (std::uint64_t k = 0; k < amplitudes_.size(); k++) {
        bool one = (k & mask) != 0;
        if (one == (bit != 0)) {
            amplitudes_[k] *= scale;
        } else {
            amplitudes_[k] = Complex{0.0, 0.0};
        }
    }
}

int SimState::measure(ir::QubitId qubit, Rng &rng) {
    double p0 = 1.0 - probability_of_one(qubit);
    int bit = rng.next_double() < p0 ? 0 : 1;
    collapse(qubit, bit);
    return bit;
}

double SimState::norm_squared() const {
    double n = 0;
    for (const auto &a : amplitudes_) {
        n += std::norm(a);
    }
    return n;
}

RunResult run(const ir::QuantumCode &code, std::uint64_t seed, const RunOptions &options) {
    ir::validate(code);
    const auto &insts = code.instructions;
    std::unordered_map<std::string, std::size_t> labels;
    for (std::size_t k = 0; k < insts.size(); k++) {
        if (auto l = std::get_if<ir::Label>(&insts[k])) {
            labels.emplace(l->name, k);
        }
    }

    RunResult result{{}, {}, std::vector<std::int64_t>(code.reg_count, 0), SimState(options.max_qubits), 0};
    Rng rng(seed);
    auto &state = result.state;
    auto write = [&](std::size_t pc, ir::RegId reg, std::int64_t value) {
        result.registers[reg] = value;
        result.trace.push_back({pc, reg, value});
    };

    std::size_t pc = 0;
    while (pc < insts.size()) {
        if (++result.steps > options.max_steps) {
            throw Error(ErrorCode::StepLimitExceeded,
                        "exceeded " + std::to_string(options.max_steps) + " executed instructions");
        }
        const auto &inst = insts[pc];
        std::size_t next = pc + 1;
        if (auto a = std::get_if<ir::Alloc>(&inst)) {
            state.alloc(a->qubit);
        } else if (auto f = std::get_if<ir::Free>(&inst)) {
            state.free(f->qubit);
        } else if (auto g = std::get_if<ir::Gate>(&inst)) {
            state.apply(g->gate, g->controls, g->target);
        } else if (auto m = std::get_if<ir::Measure>(&inst)) {
            std::int64_t value = 0;
            for (auto q : m->qubits) {
                value = (value << 1) | state.measure(q, rng);
            }
            write(pc, m->reg, value);
        } else if (auto s = std::get_if<ir::Set>(&inst)) {
            write(pc, s->reg, s->value);
        } else if (auto b = std::get_if<ir::Bin>(&inst)) {
            write(pc, b->dst, apply_binop(b->op, result.registers[b->lhs], result.registers[b->rhs]));
        } else if (auto br = std::get_if<ir::Br>(&inst)) {
            next = labels.at(result.registers[br->reg] != 0 ? br->if_true : br->if_false);
        } else if (auto j = std::get_if<ir::Jmp>(&inst)) {
            next = labels.at(j->target);
        } else if (auto o = std::get_if<ir::Out>(&inst)) {
            result.outputs.push_back(result.registers[o->reg]);
        }
        if (options.check_norm && std::abs(state.norm_squared() - 1.0) > 1e-10) {
            throw Error(ErrorCode::InvalidProgram, "state norm drifted at instruction " + std::to_string(pc));
        }
        pc = next;
    }
    return result;
}

std::vector<Complex> state_vector(const SimState &state) {
    return state.amplitudes();
}

}  // namespace qcrt::sim
