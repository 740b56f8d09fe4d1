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

#include "qcrt/examples.h"

#include <algorithm>

#include "qcrt/error.h"

namespace qcrt::examples {

std::pair<Qubit, Qubit> bell(Process &p, const Future &aux0, const Future &aux1) {
    Qubit q0 = p.alloc();
    Qubit q1 = p.alloc();
    p.if_then(aux0, [&] { p.x(q0); });
    p.if_then(aux1, [&] { p.x(q1); });
    p.h(q0);
    p.cnot(q0, q1);
    return {std::move(q0), std::move(q1)};
}

TeleportResult teleport(Process &p, const Qubit &a) {
    auto [b0, b1] = bell(p, p.lift(0), p.lift(0));
    p.cnot(a, b0);
    p.h(a);
    Future m0 = p.measure(a);
    Future m1 = p.measure(b0);
    p.if_then(m0, [&] { p.z(b1); });
    p.if_then(m1, [&] { p.x(b1); });
    return {std::move(b1), m0, m1};
}

std::vector<Future> bell_program(Process &p) {
    auto [q0, q1] = bell(p, p.lift(0), p.lift(0));
    return {p.measure({q0, q1})};
}

std::vector<Future> teleport_program(Process &p) {
    Qubit a = p.alloc();
    p.h(a);
    auto result = teleport(p, a);
    return {p.measure(result.target)};
}

std::vector<Future> grover3_program(Process &p) {
    auto q = p.alloc(3);
    auto all = [&](auto &&op) {
        for (const auto &qubit : q) {
            op(qubit);
        }
    };
    auto phase_flip_111 = [&] { p.ctrl({q[0], q[1]}, [&] { p.z(q[2]); }); };

    all([&](const Qubit &x) { p.h(x); });
    for (int iteration = 0; iteration < 2; iteration++) {
        phase_flip_111();
        all([&](const Qubit &x) { p.h(x); });
        all([&](const Qubit &x) { p.x(x); });
        phase_flip_111();
        all([&](const Qubit &x) { p.x(x); });
        all([&](const Qubit &x) { p.h(x); });
    }
    return {p.measure(q)};
}

std::vector<Future> coinloop_program(Process &p) {
    Future flips = p.var(0);
    p.while_loop(
        [&] {
            Qubit coin = p.alloc();
            p.h(coin);
            Future m = p.measure(coin);
            p.free(coin);
            p.assign(flips, flips + 1);
            return eq(m, 0);
        },
        [] {});
    return {flips};
}

const std::vector<std::string> &names() {
    static const std::vector<std::string> kNames = {"bell", "teleport", "grover3", "coinloop"};
    return kNames;
}

bool is_example(std::string_view name) {
    const auto &all = names();
    return std::find(all.begin(), all.end(), name) != all.end();
}

std::vector<Future> build(std::string_view name, Process &p) {
    if (name == "bell") {
        return bell_program(p);
    }
    if (name == "teleport") {
        return teleport_program(p);
    }
    if (name == "grover3") {
        return grover3_program(p);
    }
    if (name == "coinloop") {
        return coinloop_program(p);
    }
    throw Error(ErrorCode::UnknownExample, "unknown example '" + std::string(name) + "'");
}

}  // namespace qcrt::examples
