// Copyright 2026 The FlowQ-Net Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace flowq::cli {

/// Command-line values that override the configuration file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<double> noise;
    std::optional<std::filesystem::path> out;
};

struct TrainOptions {
    std::filesystem::path config;
    Overrides overrides;
    /// Optional checkpoint to resume from.
    std::optional<std::filesystem::path> resume;
};

struct EvaluateOptions {
    std::filesystem::path circuit;
    std::filesystem::path config;
    Overrides overrides;
    /// Fresh random starts in addition to the stored parameters.
    int restarts = 5;
};

struct SampleOptions {
    std::filesystem::path checkpoint;
    int count = 100;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    std::optional<std::filesystem::path> out;
};

struct OracleEnergyOptions {
    std::filesystem::path observable;
};

struct OracleMaxCutOptions {
    std::optional<std::filesystem::path> graph;
    /// "n,p_e,seed" for a seeded Erdos-Renyi graph.
    std::optional<std::string> erdos_renyi;
};

struct AnalyzeOptions {
    std::filesystem::path circuit;
    /// "a,b" basis bitstrings (character k = qubit k).
    std::optional<std::string> subspace;
    int max_dim = 4096;
};

struct PlotDataOptions {
    std::filesystem::path metrics;
    int window = 50;
    std::optional<std::filesystem::path> out;
};

/// Each command writes a human-readable report to `out` and returns an exit
/// code. ConfigError propagates (exit 2); other failures are std::exceptions
/// (exit 3). The tool's main performs that mapping.
int cmd_train(const TrainOptions &opt, std::ostream &out);
int cmd_evaluate(const EvaluateOptions &opt, std::ostream &out);
int cmd_sample(const SampleOptions &opt, std::ostream &out);
int cmd_oracle_energy(const OracleEnergyOptions &opt, std::ostream &out);
int cmd_oracle_maxcut(const OracleMaxCutOptions &opt, std::ostream &out);
int cmd_analyze(const AnalyzeOptions &opt, std::ostream &out);
int cmd_plotdata(const PlotDataOptions &opt, std::ostream &out);

} // namespace flowq::cli
