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

#ifndef QCRT_CODEGEN_H
#define QCRT_CODEGEN_H

#include <span>
#include <utility>
#include <vector>

#include "qcrt/ir.h"
#include "qcrt/runtime.h"

namespace qcrt::codegen {

struct GeneratedCode {
    ir::QuantumCode code;
    /// Register holding each emitted future-producing node.
    std::vector<std::pair<NodeId, ir::RegId>> registers;
};

struct Options {
    /// When false, every recorded node is emitted (used to check pruning).
    bool prune = true;
};

/// Walks the runtime AST from the demanded futures and emits, in recording
/// order, the instructions of their dependency cone followed by one OUT per
/// demanded future. Qubits and registers are numbered in emission order.
GeneratedCode build_code(const Process &process, std::span<const Future> demanded, const Options &options = {});

/// Same, over a raw node arena and demanded node ids.
GeneratedCode build_code(std::span<const ast::Node> nodes, std::span<const NodeId> demanded,
                         const Options &options = {});

}  // namespace qcrt::codegen

#endif
