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

#include <iostream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "flowq/cli/commands.hpp"
#include "flowq/cli/config.hpp"
#include "flowq/common/log.hpp"

namespace {

using namespace flowq::cli;

void add_overrides(CLI::App *cmd, Overrides &ov)
{
    cmd->add_option("--seed", ov.seed, "Master seed (overrides train.seed)");
    cmd->add_option("--jobs", ov.jobs, "Concurrent reward evaluations");
    cmd->add_option("--noise", ov.noise, "Depolarizing probability per gate (density backend)");
    cmd->add_option("--out", ov.out, "Output directory");
}

} // namespace

int main(int argc, char **argv)
{
    flowq::init_logging_from_env();

    CLI::App app{"flowq: GFlowNet search over quantum circuit architectures"};
    app.require_subcommand(1);

    TrainOptions train;
    auto *train_cmd = app.add_subcommand("train", "Train the sampler on a task");
    train_cmd->add_option("--config", train.config, "Run configuration (JSON)")->required();
    train_cmd->add_option("--resume", train.resume, "Checkpoint to resume from");
    add_overrides(train_cmd, train.overrides);

    EvaluateOptions eval;
    auto *eval_cmd = app.add_subcommand("evaluate", "Re-optimize a stored circuit on a task");
    eval_cmd->add_option("--circuit", eval.circuit, "Circuit JSON")->required();
    eval_cmd->add_option("--config", eval.config, "Run configuration (JSON)")->required();
    eval_cmd->add_option("--restarts", eval.restarts, "Fresh random starts besides the stored angles");
    add_overrides(eval_cmd, eval.overrides);

    SampleOptions sample;
    auto *sample_cmd = app.add_subcommand("sample", "Draw circuits from a trained checkpoint");
    sample_cmd->add_option("--checkpoint", sample.checkpoint, "Checkpoint file")->required();
    sample_cmd->add_option("-n,--count", sample.count, "Number of circuits");
    sample_cmd->add_option("--seed", sample.seed, "Sampling seed");
    sample_cmd->add_option("--epsilon", sample.epsilon, "Uniform exploration probability");
    sample_cmd->add_option("--out", sample.out, "Output directory (default: samples)");

    auto *oracle_cmd = app.add_subcommand("oracle", "Exact reference values");
    oracle_cmd->require_subcommand(1);
    OracleEnergyOptions energy;
    auto *energy_cmd = oracle_cmd->add_subcommand("energy", "Extremal eigenvalues of an observable");
    energy_cmd->add_option("--observable", energy.observable, "Observable file")->required();
    OracleMaxCutOptions maxcut;
    auto *maxcut_cmd = oracle_cmd->add_subcommand("maxcut", "Brute-force Max-Cut optimum");
    maxcut_cmd->add_option("--graph", maxcut.graph, "Graph file");
    maxcut_cmd->add_option("--er", maxcut.erdos_renyi, "Erdos-Renyi graph as n,p_e,seed");

    AnalyzeOptions analyze;
    auto *analyze_cmd = app.add_subcommand("analyze", "Effective generators and Lie closure");
    analyze_cmd->add_option("--circuit", analyze.circuit, "Circuit JSON")->required();
    analyze_cmd->add_option("--subspace", analyze.subspace, "Two basis states a,b to project onto");
    analyze_cmd->add_option("--max-dim", analyze.max_dim, "Closure dimension cap");

    PlotDataOptions plot;
    auto *plot_cmd = app.add_subcommand("plotdata", "Smoothed plot table from metrics.csv");
    plot_cmd->add_option("--metrics", plot.metrics, "metrics.csv from a training run")->required();
    plot_cmd->add_option("--window", plot.window, "Running-mean window");
    plot_cmd->add_option("--out", plot.out, "Output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*train_cmd) {
            return cmd_train(train, std::cout);
        }
        if (*eval_cmd) {
            return cmd_evaluate(eval, std::cout);
        }
        if (*sample_cmd) {
            return cmd_sample(sample, std::cout);
        }
        if (*energy_cmd) {
            return cmd_oracle_energy(energy, std::cout);
        }
        if (*maxcut_cmd) {
            return cmd_oracle_maxcut(maxcut, std::cout);
        }
        if (*analyze_cmd) {
            return cmd_analyze(analyze, std::cout);
        }
        if (*plot_cmd) {
            return cmd_plotdata(plot, std::cout);
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}
