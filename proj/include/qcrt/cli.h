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

#ifndef QCRT_CLI_H
#define QCRT_CLI_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcrt/runtime.h"

namespace qcrt::cli {

struct RunConfig {
    /// Example name or path to a .qc / .qasmx file.
    std::string program;
    std::uint64_t seed = 1;
    std::uint64_t shots = 1;
    Backend level = Backend::Code;
    std::optional<std::string> coupling_path;
    bool dump_ir = false;
    sim::RunOptions run;
};

/// Per-output histograms: histograms[k][value] = count.
struct ShotStatistics {
    std::vector<std::map<std::int64_t, std::uint64_t>> histograms;
    std::uint64_t shots = 0;
    std::string first_ir;
};

/// Runs the shots with seeds seed, seed+1, ...; each shot is an independent
/// whole-program execution.
ShotStatistics collect(const RunConfig &config);

/// `value count frequency` lines sorted by value, then `total N`. With more
/// than one output each histogram is preceded by `output k`.
std::string format_report(const ShotStatistics &stats, bool include_ir);

std::string run_command(const RunConfig &config);

/// Full compile pipeline on a .qc file; returns the assembly text.
std::string compile_command(const std::string &input_path, const std::optional<std::string> &coupling_path);

/// Reads QCRT_MAX_QUBITS if set.
sim::RunOptions run_options_from_env();

int main(int argc, char **argv);

}  // namespace qcrt::cli

#endif
