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

#ifndef QCRT_EXAMPLES_H
#define QCRT_EXAMPLES_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcrt/runtime.h"

namespace qcrt::examples {

/// Allocates two qubits, flips them according to the two conditions and
/// entangles them into a Bell pair. Literal conditions are resolved on the
/// host, so no branch reaches the generated code.
std::pair<Qubit, Qubit> bell(Process &p, const Future &aux0, const Future &aux1);

struct TeleportResult {
    Qubit target;
    Future m0;
    Future m1;
};

/// Teleports `a` onto a fresh qubit: Z on the target if `a` measured 1, then X
/// if the Bell half measured 1.
TeleportResult teleport(Process &p, const Qubit &a);

/// Whole programs. Each returns the futures it prints.
std::vector<Future> bell_program(Process &p);
/// h(a); teleport; measure the target.
std::vector<Future> teleport_program(Process &p);
/// Three-qubit Grover search for |111>, two iterations.
std::vector<Future> grover3_program(Process &p);
/// Flips fresh coins on the quantum side until one reads 1; returns the number of flips.
std::vector<Future> coinloop_program(Process &p);

const std::vector<std::string> &names();
bool is_example(std::string_view name);
/// Throws ErrorCode::UnknownExample.
std::vector<Future> build(std::string_view name, Process &p);

}  // namespace qcrt::examples

#endif
