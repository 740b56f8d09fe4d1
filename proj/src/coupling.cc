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

#include "qcrt/coupling.h"

#include <algorithm>
#include <optional>
#include <queue>
#include <sstream>

#include "qcrt/error.h"

namespace qcrt::ir {

CouplingGraph::CouplingGraph(std::uint32_t node_count,
                             const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges)
    : node_count_(node_count), adjacency_(node_count) {
    if (node_count == 0) {
        throw Error(ErrorCode::InvalidCoupling, "coupling graph needs at least one node");
    }
    for (auto [u, v] : edges) {
        if (u >= node_count || v >= node_count) {
            throw Error(ErrorCode::InvalidCoupling,
                        "edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
        }
        if (u == v) {
            throw Error(ErrorCode::InvalidCoupling, "self-loop on node " + std::to_string(u));
        }
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    std::vector<bool> seen(node_count, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::uint32_t reached = 1;
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto v : adjacency_[u]) {
            if (!seen[v]) {
                seen[v] = true;
                reached++;
                stack.push_back(v);
            }
        }
    }
    if (reached != node_count) {
        throw Error(ErrorCode::InvalidCoupling, "coupling graph is not connected");
    }
}

CouplingGraph CouplingGraph::line(std::uint32_t node_count) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t k = 0; k + 1 < node_count; k++) {
        edges.emplace_back(k, k + 1);
    }
    return CouplingGraph(node_count, edges);
}

CouplingGraph CouplingGraph::complete(std::uint32_t node_count) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t a = 0; a < node_count; a++) {
        for (std::uint32_t b = a + 1; b < node_count; b++) {
            edges.emplace_back(a, b);
        }
    }
    return CouplingGraph(node_count, edges);
}

CouplingGraph CouplingGraph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<std::uint32_t> n;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        long long a, b;
        if (!(fields >> a)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw Error(ErrorCode::InvalidCoupling, "line " + std::to_string(line_no) + ": expected integer");
        }
        if (a < 0 || a > 0xFFFFFFFFLL) {
            throw Error(ErrorCode::InvalidCoupling, "line " + std::to_string(line_no) + ": value out of range");
        }
        if (!n) {
            n = static_cast<std::uint32_t>(a);
        } else {
            if (!(fields >> b) || b < 0 || b > 0xFFFFFFFFLL) {
                throw Error(ErrorCode::InvalidCoupling, "line " + std::to_string(line_no) + ": expected 'u v'");
            }
            edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        }
        std::string rest;
        if (fields >> rest) {
            throw Error(ErrorCode::InvalidCoupling, "line " + std::to_string(line_no) + ": trailing text");
        }
    }
    if (!n) {
        throw Error(ErrorCode::InvalidCoupling, "missing node count");
    }
    return CouplingGraph(*n, edges);
}

std::string CouplingGraph::serialize() const {
    std::string out = std::to_string(node_count_) + "\n";
    for (auto [u, v] : edges()) {
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    }
    return out;
}

bool CouplingGraph::adjacent(std::uint32_t a, std::uint32_t b) const {
    if (a >= node_count_ || b >= node_count_) {
        return false;
    }
    return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> CouplingGraph::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t u = 0; u < node_count_; u++) {
        for (auto v : adjacency_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

std::vector<std::uint32_t> CouplingGraph::shortest_path(std::uint32_t from, std::uint32_t to) const {
    constexpr auto kNone = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> parent(node_count_, kNone);
    std::queue<std::uint32_t> frontier;
    parent[from] = from;
    frontier.push(from);
    while (!frontier.empty() && parent[to] == kNone) {
        auto u = frontier.front();
        frontier.pop();
        for (auto v : adjacency_[u]) {
            if (parent[v] == kNone) {
                parent[v] = u;
                frontier.push(v);
            }
        }
    }
    std::vector<std::uint32_t> path{to};
    while (path.back() != from) {
        path.push_back(parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace qcrt::ir
