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

#ifndef QCRT_COMPILER_H
#define QCRT_COMPILER_H

#include <cstdint>
#include <vector>

#include "qcrt/coupling.h"
#include "qcrt/ir.h"

namespace qcrt::compiler {

/// Removes adjacent G, G^-1 pairs on identical (controls, target) inside one
/// basic block, until nothing changes. MEASURE also ends the search window.
ir::QuantumCode cancel_inverse_pairs(const ir::QuantumCode &code);

/// Merges adjacent same-axis rotations on identical (controls, target) and
/// drops rotations whose angle is a multiple of 4*pi (2*pi for P).
ir::QuantumCode merge_rotations(const ir::QuantumCode &code);

/// Rewrites every gate with more than one control, and every controlled gate
/// other than CX, into CX plus single-qubit gates. Ancillas take the indices
/// just above `code.qubit_count`; they are allocated at the start of the
/// program and freed at the end, and are back in |0> after every use.
ir::QuantumCode decompose_multictrl(const ir::QuantumCode &code);

struct MappedCode {
    ir::QuantumCode code;
    /// final_layout[logical] = physical qubit holding it at the end of the program.
    std::vector<std::uint32_t> final_layout;
};

/// Routes two-qubit gates onto `graph` by inserting SWAPs (three CX each)
/// along shortest paths, starting from the identity placement. The layout is
/// restored to the identity before every label, branch and jump so that all
/// paths agree on it. Output qubit indices are physical; every physical qubit
/// is allocated up front.
MappedCode map_to_coupling(const ir::QuantumCode &code, const ir::CouplingGraph &graph);

/// cancel -> merge -> decompose -> cancel -> merge, then routing when a
/// coupling graph is given. The result is validated at assembly level.
ir::QuantumCode emit_assembly(const ir::QuantumCode &code, const ir::CouplingGraph *coupling = nullptr);

}  // namespace qcrt::compiler

#endif
