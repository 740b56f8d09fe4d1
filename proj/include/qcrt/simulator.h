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

#ifndef QCRT_SIMULATOR_H
#define QCRT_SIMULATOR_H

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qcrt/gate.h"
#include "qcrt/ir.h"

namespace qcrt::sim {

/// Pinned generator: std::mt19937_64 (whose output sequence is fixed by the
/// C++ standard) seeded with the 64-bit seed. A draw in [0, 1) takes the top
/// 53 bits of one output and scales by 2^-53.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

   private:
    std::mt19937_64 engine_;
};

/// Dense state vector over the currently live qubits. Qubits are ordered by
/// allocation; the first live qubit is the most significant bit of the
/// amplitude index.
class SimState {
   public:
    explicit SimState(std::uint32_t max_qubits = 24) : max_qubits_(max_qubits), amplitudes_{Complex{1.0, 0.0}} {
    }

    /// Appends `qubit` in |0> as the new least significant bit.
    void alloc(ir::QubitId qubit);
    /// Removes `qubit`, which must be in a computational basis state.
    void free(ir::QubitId qubit);
    void apply(const GateSpec &gate, std::span<const ir::QubitId> controls, ir::QubitId target);
    double probability_of_one(ir::QubitId qubit) const;
    /// Projects `qubit` onto `bit` and renormalizes. Amplitudes with the
    /// opposite bit become exactly zero.
    void collapse(ir::QubitId qubit, int bit);
    int measure(ir::QubitId qubit, Rng &rng);

    const std::vector<Complex> &amplitudes() const noexcept {
        return amplitudes_;
    }
    const std::vector<ir::QubitId> &qubit_order() const noexcept {
        return live_;
    }
    bool is_live(ir::QubitId qubit) const;
    double norm_squared() const;

   private:
    std::uint64_t mask_of(ir::QubitId qubit) const;

    std::uint32_t max_qubits_;
    std::vector<Complex> amplitudes_;
    std::vector<ir::QubitId> live_;
};

struct RunOptions {
    std::uint64_t max_steps = 1'000'000;
    std::uint32_t max_qubits = 24;
    /// Check normalization after every instruction (throws InvalidProgram if
    /// it drifts by more than 1e-10).
    bool check_norm = false;
};

struct RegisterWrite {
    std::size_t pc;
    ir::RegId reg;
    std::int64_t value;
    bool operator==(const RegisterWrite &) const = default;
};

struct RunResult {
    std::vector<std::int64_t> outputs;
    std::vector<RegisterWrite> trace;
    std::vector<std::int64_t> registers;
    SimState state;
    std::uint64_t steps = 0;
};

/// Executes code at either level. Multi-controlled gates are applied natively.
RunResult run(const ir::QuantumCode &code, std::uint64_t seed, const RunOptions &options = {});

/// Amplitudes of a final state; index bits follow qubit_order(), first qubit most significant.
std::vector<Complex> state_vector(const SimState &state);

}  // namespace qcrt::sim

#endif
