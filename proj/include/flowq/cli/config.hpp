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

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flowq/mdp/action_space.hpp"
#include "flowq/oracle/graph.hpp"
#include "flowq/rewards/classify.hpp"
#include "flowq/rewards/inner_loop.hpp"
#include "flowq/rewards/task.hpp"
#include "flowq/trainer/trainer.hpp"

namespace flowq::cli {

/// Raised for anything wrong with a run configuration or command-line value;
/// the tool maps it to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct ToySpec {
    int n_qubits = 2;
    int target_gates = 3;
};

struct VqeSpec {
    std::filesystem::path observable;
    /// Overrides the preparation line of the observable file when set.
    std::optional<std::string> prepare;
};

struct ErdosRenyiSpec {
    int n = 8;
    double p_e = 0.5;
    std::uint64_t seed = 0;
};

struct MaxCutSpec {
    std::optional<std::filesystem::path> graph;
    std::optional<ErdosRenyiSpec> erdos_renyi;
    double cvar_alpha = 1.0;
};

struct SynthSpec {
    int dim = 4;
    int n_samples = 200;
    double margin = 2.0;
    double sigma = 0.25;
    std::uint64_t seed = 7;
};

struct ClassifySpec {
    std::optional<std::filesystem::path> dataset;
    std::optional<SynthSpec> synth;
    double test_fraction = 0.25;
    std::uint64_t split_seed = 8;
    Encoding encoding = Encoding::Angle;
    InnerLoopConfig final_inner;
};

/// Parsed run configuration. Relative paths are resolved against the
/// directory of the configuration file.
struct RunConfig {
    std::string task;
    std::filesystem::path output_dir = "flowq_out";
    TrainConfig train;
    std::vector<GateKind> gate_set{GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CNOT};
    std::string connectivity = "all_to_all";
    std::vector<std::pair<int, int>> connectivity_pairs;
    /// Inner-loop settings; the task default when absent.
    std::optional<InnerLoopConfig> inner;
    /// Depolarizing probability per gate (density backend) when set.
    std::optional<double> noise;

    ToySpec toy;
    VqeSpec vqe;
    MaxCutSpec maxcut;
    ClassifySpec classify;
};

/// Validates `doc` against the schema and rejects unknown keys in every
/// section. Throws ConfigError with the offending key path.
RunConfig parse_run_config(const nlohmann::json &doc, const std::filesystem::path &base_dir = {});
/// Reads and parses a JSON configuration file; missing or unreadable files
/// and JSON syntax errors are ConfigErrors too.
RunConfig load_run_config(const std::filesystem::path &path);

/// The task plus the oracle values the tool reports next to it.
struct TaskBundle {
    std::unique_ptr<Task> task;
    /// Exact ground energy for VQE tasks.
    std::optional<double> ground_energy;
    /// Brute-force optimum for Max-Cut tasks.
    std::optional<int> maxcut_optimum;
    /// The problem graph for Max-Cut tasks.
    std::optional<Graph> graph;
};

/// Loads the task's inputs (observable, graph, dataset) and builds it.
TaskBundle build_task(const RunConfig &config);
ActionSpace build_action_space(const RunConfig &config, int n_qubits);
/// The action space recorded in checkpoint metadata.
ActionSpace action_space_from_meta(const nlohmann::json &meta);

} // namespace flowq::cli
