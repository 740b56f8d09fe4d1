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

#ifndef QCRT_COUPLING_H
#define QCRT_COUPLING_H

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcrt::ir {

/// Undirected, connected graph over physical qubits 0..n-1. Two-qubit gates
/// are only allowed between adjacent physical qubits.
class CouplingGraph {
   public:
    /// Throws ErrorCode::InvalidCoupling on self-loops, out-of-range endpoints
    /// or a disconnected graph.
    CouplingGraph(std::uint32_t node_count, const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges);

    static CouplingGraph line(std::uint32_t node_count);
    static CouplingGraph complete(std::uint32_t node_count);

    /// File format: first line `n`, then one `u v` edge per line. `#` comments.
    static CouplingGraph parse(std::string_view text);
    std::string serialize() const;

    std::uint32_t node_count() const noexcept {
        return node_count_;
    }
    bool adjacent(std::uint32_t a, std::uint32_t b) const;
    const std::vector<std::uint32_t> &neighbors(std::uint32_t a) const {
        return adjacency_[a];
    }
    /// Sorted (u < v) edge list.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

    /// A shortest path from `from` to `to`, both endpoints included. BFS
    /// visits neighbours in ascending order, so ties go to lower indices.
    std::vector<std::uint32_t> shortest_path(std::uint32_t from, std::uint32_t to) const;

   private:
    std::uint32_t node_count_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
};

}  // namespace qcrt::ir

#endif
