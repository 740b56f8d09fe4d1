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

#include "qcrt/cli.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qcrt/compiler.h"
#include "qcrt/error.h"
#include "qcrt/examples.h"
#include "qcrt/ir.h"
#include "qcrt/simulator.h"

namespace qcrt::cli {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::optional<ir::CouplingGraph> load_coupling(const std::optional<std::string> &path) {
    if (!path) {
        return std::nullopt;
    }
    return ir::CouplingGraph::parse(read_file(*path));
}

void record(ShotStatistics &stats, const std::vector<std::int64_t> &outputs) {
    if (stats.histograms.size() < outputs.size()) {
        stats.histograms.resize(outputs.size());
    }
    for (std::size_t k = 0; k < outputs.size(); k++) {
        stats.histograms[k][outputs[k]]++;
    }
    stats.shots++;
}

}  // namespace

sim::RunOptions run_options_from_env() {
    sim::RunOptions options;
    if (const char *env = std::getenv("QCRT_MAX_QUBITS")) {
        char *end = nullptr;
        unsigned long value = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || value == 0 || value > 40) {
            throw Error(ErrorCode::InvalidProgram, "QCRT_MAX_QUBITS must be an integer in [1, 40]");
        }
        options.max_qubits = static_cast<std::uint32_t>(value);
    }
    return options;
}

ShotStatistics collect(const RunConfig &config) {
    auto coupling = load_coupling(config.coupling_path);
    if (coupling && config.level != Backend::Assembly) {
        throw Error(ErrorCode::InvalidProgram, "--coupling requires --level asm");
    }
    ShotStatistics stats;

    if (examples::is_example(config.program)) {
        ProcessOptions options{config.level, coupling, config.run};
        for (std::uint64_t shot = 0; shot < config.shots; shot++) {
            Process p(config.seed + shot, options);
            auto futures = examples::build(config.program, p);
            p.execute(futures);
            std::vector<std::int64_t> outputs;
            for (const auto &f : futures) {
                outputs.push_back(f.value());
            }
            if (shot == 0 && p.executed_code()) {
                stats.first_ir = ir::serialize(*p.executed_code());
            }
            record(stats, outputs);
        }
        return stats;
    }

    if (!ends_with(config.program, ".qc") && !ends_with(config.program, ".qasmx")) {
        throw Error(ErrorCode::UnknownExample, "'" + config.program + "' is neither an example nor a .qc/.qasmx file");
    }
    auto level = ends_with(config.program, ".qasmx") ? ir::Level::Assembly : ir::Level::Code;
    ir::QuantumCode code = ir::parse(read_file(config.program), level);
    if (config.level == Backend::Assembly) {
        code = compiler::emit_assembly(code, coupling ? &*coupling : nullptr);
    }
    stats.first_ir = ir::serialize(code);
    for (std::uint64_t shot = 0; shot < config.shots; shot++) {
        auto result = sim::run(code, config.seed + shot, config.run);
        record(stats, result.outputs);
    }
    return stats;
}

std::string format_report(const ShotStatistics &stats, bool include_ir) {
    std::string out;
    if (include_ir) {
        out += stats.first_ir;
        out += "---\n";
    }
    char buf[128];
    for (std::size_t k = 0; k < stats.histograms.size(); k++) {
        if (stats.histograms.size() > 1) {
            out += "output " + std::to_string(k) + "\n";
        }
        for (auto [value, count] : stats.histograms[k]) {
            double freq = stats.shots ? static_cast<double>(count) / static_cast<double>(stats.shots) : 0.0;
            std::snprintf(buf, sizeof(buf), "%lld %llu %.6f\n", static_cast<long long>(value),
                          static_cast<unsigned long long>(count), freq);
            out += buf;
        }
    }
    out += "total " + std::to_string(stats.shots) + "\n";
    return out;
}

std::string run_command(const RunConfig &config) {
    return format_report(collect(config), config.dump_ir);
}

std::string compile_command(const std::string &input_path, const std::optional<std::string> &coupling_path) {
    auto coupling = load_coupling(coupling_path);
    auto level = ends_with(input_path, ".qasmx") ? ir::Level::Assembly : ir::Level::Code;
    ir::QuantumCode code = ir::parse(read_file(input_path), level);
    return ir::serialize(compiler::emit_assembly(code, coupling ? &*coupling : nullptr));
}

int main(int argc, char **argv) {
    CLI::App app{"qcrt: build, compile and simulate quantum programs with measurement futures"};
    app.require_subcommand(1);

    RunConfig config;
    std::string level = "code";
    auto *run = app.add_subcommand("run", "Run an example program or a .qc/.qasmx file and print a histogram");
    run->add_option("program", config.program, "bell | teleport | grover3 | coinloop | FILE")->required();
    run->add_option("--seed", config.seed, "Seed of the first shot");
    run->add_option("--shots", config.shots, "Number of independent executions")->check(CLI::PositiveNumber);
    run->add_option("--level", level, "Execute quantum code directly or compiled assembly")
        ->check(CLI::IsMember({"code", "asm"}));
    run->add_option("--coupling", config.coupling_path, "Coupling graph file (requires --level asm)");
    run->add_flag("--dump-ir", config.dump_ir, "Print the executed program of the first shot");

    std::string input, output;
    std::optional<std::string> coupling;
    auto *compile = app.add_subcommand("compile", "Compile a .qc file to assembly");
    compile->add_option("input", input, "Input .qc file")->required();
    compile->add_option("--coupling", coupling, "Coupling graph file");
    compile->add_option("-o,--output", output, "Output .qasmx file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            config.level = level == "asm" ? Backend::Assembly : Backend::Code;
            config.run = run_options_from_env();
            std::cout << run_command(config);
        } else if (compile->parsed()) {
            std::string text = compile_command(input, coupling);
            if (output.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(output, std::ios::binary);
                if (!out || !(out << text)) {
                    throw Error(ErrorCode::Io, "cannot write '" + output + "'");
                }
            }
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace qcrt::cli
