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

#ifndef QCRT_IR_H
#define QCRT_IR_H

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcrt/gate.h"

namespace qcrt::ir {

using QubitId = std::uint32_t;
using RegId = std::uint32_t;

struct Alloc {
    QubitId qubit;
    bool operator==(const Alloc &) const = default;
};

struct Free {
    QubitId qubit;
    bool operator==(const Free &) const = default;
};

struct Gate {
    GateSpec gate;
    std::vector<QubitId> controls;
    QubitId target;
    bool operator==(const Gate &) const = default;
};

/// Samples `qubits` in order; qubits[0] becomes the most significant bit of `reg`.
struct Measure {
    std::vector<QubitId> qubits;
    RegId reg;
    bool operator==(const Measure &) const = default;
};

struct Set {
    RegId reg;
    std::int64_t value;
    bool operator==(const Set &) const = default;
};

struct Bin {
    BinOp op;
    RegId dst;
    RegId lhs;
    RegId rhs;
    bool operator==(const Bin &) const = default;
};

struct Label {
    std::string name;
    bool operator==(const Label &) const = default;
};

/// Jumps to `if_true` when `reg` is nonzero, otherwise to `if_false`.
struct Br {
    RegId reg;
    std::string if_true;
    std::string if_false;
    bool operator==(const Br &) const = default;
};

struct Jmp {
    std::string target;
    bool operator==(const Jmp &) const = default;
};

struct Out {
    RegId reg;
    bool operator==(const Out &) const = default;
};

using Instruction = std::variant<Alloc, Free, Gate, Measure, Set, Bin, Label, Br, Jmp, Out>;

enum class Level : std::uint8_t { Code, Assembly };

struct QuantumCode {
    std::vector<Instruction> instructions;
    std::uint32_t qubit_count = 0;
    std::uint32_t reg_count = 0;
    Level level = Level::Code;

    /// Recomputes qubit_count / reg_count as one past the largest index used.
    void recount();

    bool operator==(const QuantumCode &) const = default;
};

/// Qubits read or written by an instruction (empty for classical ones).
std::vector<QubitId> touched_qubits(const Instruction &inst);

/// LABEL, BR and JMP end a basic block.
bool is_control_flow(const Instruction &inst) noexcept;

/// Checks label uniqueness and resolution, write-before-read of registers on
/// every path, gate operand sanity, and the Assembly-level gate restrictions
/// when `code.level == Level::Assembly`. Throws qcrt::Error.
void validate(const QuantumCode &code);

/// One instruction per line, lowercase mnemonics, angles with 17 significant
/// digits. Deterministic byte-for-byte.
std::string serialize(const QuantumCode &code);
std::string serialize(const Instruction &inst);

/// Inverse of serialize. `#` starts a comment. The level is not part of the
/// text; callers pick it (the CLI uses the file extension). The result is
/// validated.
QuantumCode parse(std::string_view text, Level level = Level::Code);

}  // namespace qcrt::ir

#endif
