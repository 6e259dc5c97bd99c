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

#include <catch_amalgamated.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "flowq/cli/commands.hpp"
#include "flowq/cli/config.hpp"
#include "flowq/mdp/mdp.hpp"
#include "flowq/policy/checkpoint.hpp"
#include "flowq/trainer/metrics_log.hpp"
#include "rule_checker.hpp"

using namespace flowq;
using namespace flowq::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string &name)
{
    fs::path dir = fs::temp_directory_path() / ("flowq_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path &dir, const json &doc)
{
    const fs::path path = dir / "config.json";
    std::ofstream(path) << doc.dump(2);
    return path;
}

json toy_doc(const fs::path &out)
{
    return {{"task", "toy"},
            {"output_dir", out.string()},
            {"toy", {{"n_qubits", 2}, {"target_gates", 3}}},
            {"train",
             {{"epochs", 60}, {"max_gates", 3}, {"max_params", 2}, {"seed", 4}, {"lr_policy", 1e-3}}},
            {"policy", {{"n_layers", 1}, {"n_heads", 2}, {"embed_dim", 16}, {"hidden_dim", 32}}}};
}

std::string slurp(const fs::path &path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string &args)
{
    const std::string cmd = std::string(FLOWQ_TOOL) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const fs::path kData = FLOWQ_DATA_DIR;
const fs::path kConfigs = FLOWQ_CONFIG_DIR;

} // namespace

TEST_CASE("minimal toy config takes the defaults")
{
    const RunConfig cfg = parse_run_config(json{{"task", "toy"}});
    CHECK(cfg.task == "toy");
    CHECK(cfg.toy.n_qubits == 2);
    CHECK(cfg.train.budgets.max_gates == 40);
    CHECK(cfg.train.budgets.max_params == 20);
    CHECK(cfg.train.batch_size == 5);
    CHECK(cfg.train.lr_policy == 1e-4);
    CHECK_FALSE(cfg.noise.has_value());
    CHECK(build_action_space(cfg, 2).size() == 9);
}

TEST_CASE("unknown keys are rejected in every section")
{
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"extra", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"train", {{"lr", 1}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"policy", {{"depth", 2}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"inner", {{"steps", 2}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "vqe"},
                                          {"vqe", {{"observable", "a.obs"}, {"hamiltonian", 1}}}}),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_run_config(json{{"task", "maxcut"},
                              {"maxcut", {{"erdos_renyi", {{"n", 5}, {"p_e", 0.5}, {"seed", 1}, {"k", 2}}}}}}),
        ConfigError);
    try {
        parse_run_config(json{{"task", "toy"}, {"train", {{"epochz", 1}}}});
        FAIL("expected a ConfigError");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("train.epochz") != std::string::npos);
    }
}

TEST_CASE("config schema errors")
{
    CHECK_THROWS_AS(parse_run_config(json{{"train", json::object()}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "chess"}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"train", {{"epochs", "many"}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"train", {{"epochs", 1.5}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"train", {{"seed", -1}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"train", {{"beta", 0.0}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"train", {{"baseline_mode", "median"}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"noise", 1.5}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"policy", {{"embed_dim", 10}, {"n_heads", 4}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "vqe"}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"vqe", {{"observable", "x"}}}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "maxcut"}, {"maxcut", json::object()}}), ConfigError);
    json both = {{"task", "maxcut"}};
    both["maxcut"] = {{"graph", "g"}, {"erdos_renyi", {{"n", 5}, {"p_e", 0.5}, {"seed", 1}}}};
    CHECK_THROWS_AS(parse_run_config(both), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "classify"}, {"classify", {{"encoding", "amplitude"}, {"synth", json::object()}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"action_space", {{"gate_set", {"CNOT"}}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"action_space", {{"gate_set", {"H"}}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"task", "toy"}, {"action_space", {{"connectivity", "ring"}}}}),
                    ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/flowq.json"), ConfigError);
    const fs::path dir = scratch_dir("badjson");
    std::ofstream(dir / "c.json") << "{\"task\": ";
    CHECK_THROWS_AS(load_run_config(dir / "c.json"), ConfigError);
}

TEST_CASE("action space options")
{
    RunConfig cfg = parse_run_config(
        json{{"task", "toy"},
             {"action_space", {{"gate_set", {"RY", "CNOT"}}, {"connectivity", "line"}}}});
    const ActionSpace line = build_action_space(cfg, 3);
    CHECK(line.size() == 3 + 4 + 1);
    cfg = parse_run_config(json{{"task", "toy"}, {"action_space", {{"connectivity", {{0, 1}}}}}});
    CHECK(build_action_space(cfg, 2).size() == 6 + 1 + 1);
    cfg = parse_run_config(json{{"task", "toy"}, {"action_space", {{"connectivity", {{0, 5}}}}}});
    CHECK_THROWS_AS(build_action_space(cfg, 2), ConfigError);
}

TEST_CASE("relative paths resolve against the config directory")
{
    const RunConfig cfg = parse_run_config(
        json{{"task", "vqe"}, {"vqe", {{"observable", "h.obs"}}}, {"output_dir", "out"}}, "/base/dir");
    CHECK(cfg.vqe.observable == fs::path("/base/dir/h.obs"));
    CHECK(cfg.output_dir == fs::path("/base/dir/out"));
    const RunConfig abs = parse_run_config(json{{"task", "vqe"}, {"vqe", {{"observable", "/x/h.obs"}}}}, "/b");
    CHECK(abs.vqe.observable == fs::path("/x/h.obs"));
}

TEST_CASE("every shipped config parses and builds its task")
{
    int seen = 0;
    for (const auto &entry : fs::directory_iterator(kConfigs)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        INFO(entry.path().string());
        const RunConfig cfg = load_run_config(entry.path());
        const TaskBundle bundle = build_task(cfg);
        CHECK(bundle.task->name() == cfg.task);
        CHECK(build_action_space(cfg, bundle.task->n_qubits()).n_qubits() == bundle.task->n_qubits());
        ++seen;
    }
    CHECK(seen >= 5);
}

TEST_CASE("task bundles carry oracle values")
{
    RunConfig vqe = parse_run_config(json{{"task", "vqe"}, {"vqe", {{"observable", (kData / "h2_4q.obs").string()}}}});
    TaskBundle b = build_task(vqe);
    REQUIRE(b.ground_energy);
    CHECK(*b.ground_energy == Catch::Approx(-1.1372701746609024).margin(1e-10));
    CHECK(b.task->default_baseline() == Catch::Approx(-1.1166843870853405).margin(1e-10));

    vqe.vqe.prepare = "11";
    CHECK_THROWS(build_task(vqe));

    RunConfig mc = parse_run_config(json{{"task", "maxcut"}, {"maxcut", {{"graph", (kData / "ring6.graph").string()}}}});
    b = build_task(mc);
    CHECK(*b.maxcut_optimum == 6);
    CHECK(b.task->n_qubits() == 6);

    RunConfig toy_noisy = parse_run_config(json{{"task", "toy"}, {"noise", 0.01}});
    CHECK_THROWS_AS(build_task(toy_noisy), ConfigError);
}

TEST_CASE("train writes parseable artifacts and is deterministic")
{
    const fs::path dir = scratch_dir("train");
    const fs::path cfg_path = write_config(dir, toy_doc(dir / "run_a"));
    std::ostringstream log_a;
    REQUIRE(cmd_train({cfg_path, {}, {}}, log_a) == kExitOk);
    CHECK(log_a.str().find("best loss") != std::string::npos);
    CHECK(log_a.str().find("P=") != std::string::npos);

    const fs::path run_a = dir / "run_a";
    for (const char *name : {"metrics.csv", "best_circuit.json", "checkpoint.fqck", "plot_data.csv", "summary.json"}) {
        INFO(name);
        CHECK(fs::exists(run_a / name));
    }
    const auto rows = load_metrics_csv((run_a / "metrics.csv").string());
    CHECK(rows.size() == 60);
    std::ostringstream rewritten;
    write_metrics_csv(rewritten, rows);
    CHECK(rewritten.str() == slurp(run_a / "metrics.csv"));
    const CircuitFile best = load_circuit((run_a / "best_circuit.json").string());
    CHECK(best.arch.n_qubits() == 2);
    CHECK(best.arch.size() == 3);
    const Checkpoint ckpt = load_checkpoint((run_a / "checkpoint.fqck").string());
    CHECK(ckpt.meta.at("task") == "toy");
    const json summary = json::parse(slurp(run_a / "summary.json"));
    CHECK(summary.at("best_loss").get<double>() == 0.0);

    Overrides ov;
    ov.out = dir / "run_b";
    std::ostringstream log_b;
    REQUIRE(cmd_train({cfg_path, ov, {}}, log_b) == kExitOk);
    CHECK(slurp(run_a / "metrics.csv") == slurp(dir / "run_b" / "metrics.csv"));
    CHECK(slurp(run_a / "best_circuit.json") == slurp(dir / "run_b" / "best_circuit.json"));

    ov.out = dir / "run_c";
    ov.seed = 99;
    std::ostringstream log_c;
    REQUIRE(cmd_train({cfg_path, ov, {}}, log_c) == kExitOk);
    CHECK(slurp(run_a / "metrics.csv") != slurp(dir / "run_c" / "metrics.csv"));

    ov.out = dir / "run_d";
    ov.seed.reset();
    std::ostringstream log_d;
    REQUIRE(cmd_train({cfg_path, ov, run_a / "checkpoint.fqck"}, log_d) == kExitOk);
    CHECK(load_metrics_csv((dir / "run_d" / "metrics.csv").string()).size() == 60);
}

TEST_CASE("sample is fast, compliant and seed-deterministic")
{
    const fs::path dir = scratch_dir("sample");
    const fs::path cfg_path = write_config(dir, toy_doc(dir / "run"));
    std::ostringstream sink;
    REQUIRE(cmd_train({cfg_path, {}, {}}, sink) == kExitOk);

    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out;
    REQUIRE(cmd_sample({dir / "run" / "checkpoint.fqck", 100, 5, 0.0, dir / "s1"}, out) == kExitOk);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(seconds < 10.0);
    CHECK(out.str().find("unique") != std::string::npos);

    const json summary = json::parse(slurp(dir / "s1" / "summary.json"));
    CHECK(summary.at("samples") == 100);
    std::set<std::string> keys;
    for (const auto &c : summary.at("circuits")) {
        keys.insert(c.at("key").get<std::string>());
        const CircuitFile f = load_circuit((dir / "s1" / c.at("file").get<std::string>()).string());
        CHECK(canonical_key(f.arch) == c.at("key").get<std::string>());
        CHECK(checker::first_violation(f.arch.gates()).empty());
        CHECK(f.arch.size() <= 3);
        CHECK(f.arch.n_params() <= 2);
    }
    CHECK(summary.at("unique").get<std::size_t>() == keys.size());

    std::ostringstream again;
    REQUIRE(cmd_sample({dir / "run" / "checkpoint.fqck", 100, 5, 0.0, dir / "s2"}, again) == kExitOk);
    CHECK(slurp(dir / "s1" / "summary.json") == slurp(dir / "s2" / "summary.json"));

    CHECK_THROWS_AS(cmd_sample({dir / "run" / "checkpoint.fqck", 0, 5, 0.0, dir / "s3"}, sink), ConfigError);
    CHECK_THROWS(cmd_sample({dir / "missing.fqck", 10, 5, 0.0, dir / "s3"}, sink));
}

TEST_CASE("evaluate the shipped H2 circuit")
{
    const fs::path dir = scratch_dir("evaluate");
    const fs::path cfg_path = write_config(
        dir, json{{"task", "vqe"}, {"vqe", {{"observable", (kData / "h2_4q.obs").string()}}}});
    const fs::path circuit = kData / "h2_4q_dla_circuit.json";

    Overrides pure_ov;
    pure_ov.out = dir / "pure";
    std::ostringstream pure_log;
    REQUIRE(cmd_evaluate({circuit, cfg_path, pure_ov, 5}, pure_log) == kExitOk);
    const json pure = json::parse(slurp(dir / "pure" / "report.json"));
    CHECK(pure.at("gap").get<double>() < 1.6e-3);
    CHECK(pure.at("chemical_accuracy").get<bool>());
    CHECK(pure.at("metrics").at("P") == 3);
    CHECK(load_circuit((dir / "pure" / "evaluated_circuit.json").string()).theta.has_value());

    Overrides zero_ov;
    zero_ov.noise = 0.0;
    zero_ov.out = dir / "zero";
    std::ostringstream zero_log;
    REQUIRE(cmd_evaluate({circuit, cfg_path, zero_ov, 5}, zero_log) == kExitOk);
    const json zero = json::parse(slurp(dir / "zero" / "report.json"));
    CHECK(zero.at("loss").get<double>() == Catch::Approx(pure.at("loss").get<double>()).margin(1e-10));

    Overrides noisy_ov;
    noisy_ov.noise = 1e-3;
    noisy_ov.out = dir / "noisy";
    std::ostringstream noisy_log;
    REQUIRE(cmd_evaluate({circuit, cfg_path, noisy_ov, 1}, noisy_log) == kExitOk);
    const json noisy = json::parse(slurp(dir / "noisy" / "report.json"));
    CHECK(noisy.at("loss").get<double>() > pure.at("loss").get<double>());

    std::ofstream(dir / "bad.json") << R"({"n_qubits": 4, "gates": [{"kind": "RQ", "qubits": [0]}]})";
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_evaluate({dir / "bad.json", cfg_path, {}, 5}, sink), std::runtime_error);
    std::ofstream(dir / "small.json") << R"({"n_qubits": 2, "gates": [{"kind": "RY", "qubits": [0], "param": 0}]})";
    CHECK_THROWS_AS(cmd_evaluate({dir / "small.json", cfg_path, {}, 5}, sink), std::runtime_error);
}

TEST_CASE("evaluate reports task-specific columns")
{
    const fs::path dir = scratch_dir("evaluate_tasks");
    const fs::path mc_cfg = write_config(
        dir, json{{"task", "maxcut"},
                  {"maxcut", {{"graph", (kData / "ring6.graph").string()}}},
                  {"inner", {{"restarts", 2}, {"max_steps", 100}, {"lr", 0.05}}}});
    std::ofstream(dir / "rx.json") << circuit_to_json([] {
        CircuitArch a(6);
        for (int q = 0; q < 6; ++q) {
            a.append_rotation(GateKind::RX, q);
        }
        return a;
    }()).dump();
    Overrides ov;
    ov.out = dir / "mc";
    std::ostringstream log;
    REQUIRE(cmd_evaluate({dir / "rx.json", mc_cfg, ov, 2}, log) == kExitOk);
    const json report = json::parse(slurp(dir / "mc" / "report.json"));
    CHECK(report.at("maxcut_optimum") == 6);
    CHECK(report.at("expectation_ratio").get<double>() <= 1.0 + 1e-12);
    CHECK(report.at("expectation_ratio").get<double>() >= 0.5 - 1e-9);
}

TEST_CASE("plotdata smooths with a running mean")
{
    const fs::path dir = scratch_dir("plot");
    std::vector<MetricsRow> rows;
    const double rewards[] = {1.0, 2.0, 6.0, 3.0};
    for (int i = 0; i < 4; ++i) {
        rows.push_back({i, rewards[i], 0.0, 1.0, i + 1, 0});
    }
    save_metrics_csv((dir / "m.csv").string(), rows);
    std::ostringstream out;
    REQUIRE(cmd_plotdata({dir / "m.csv", 3, {}}, out) == kExitOk);
    std::istringstream lines(out.str());
    std::string header, line;
    std::getline(lines, header);
    CHECK(header.rfind("epoch,mean_reward,mean_reward_smooth", 0) == 0);
    std::vector<double> smooth;
    while (std::getline(lines, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        smooth.push_back(std::stod(cell));
    }
    REQUIRE(smooth.size() == 4);
    CHECK(smooth[2] == Catch::Approx(3.0));
    CHECK(smooth[3] == Catch::Approx(11.0 / 3.0));

    REQUIRE(cmd_plotdata({dir / "m.csv", 50, dir / "p.csv"}, out) == kExitOk);
    CHECK(fs::exists(dir / "p.csv"));
    CHECK_THROWS_AS(cmd_plotdata({dir / "m.csv", 0, {}}, out), ConfigError);
}

TEST_CASE("analyze and oracle reports")
{
    std::ostringstream out;
    REQUIRE(cmd_analyze({kData / "h2_4q_dla_circuit.json", std::string("1100,0011"), 4096}, out) == kExitOk);
    const std::string text = out.str();
    CHECK(text.find("+XIIX +IXIX +XXXY") != std::string::npos);
    CHECK(text.find("+XXXY -> sigma_y") != std::string::npos);
    CHECK_THROWS_AS(cmd_analyze({kData / "h2_4q_dla_circuit.json", std::string("1100"), 4096}, out),
                    ConfigError);

    std::ostringstream energy;
    REQUIRE(cmd_oracle_energy({kData / "h2_4q.obs"}, energy) == kExitOk);
    CHECK(energy.str().find("-1.1372701746609") != std::string::npos);

    std::ostringstream cut;
    REQUIRE(cmd_oracle_maxcut({kData / "ring6.graph", {}}, cut) == kExitOk);
    CHECK(cut.str().find("maxcut 6") != std::string::npos);
    CHECK_THROWS_AS(cmd_oracle_maxcut({{}, std::string("8,0.5")}, cut), ConfigError);
    CHECK_THROWS_AS(cmd_oracle_maxcut({{}, {}}, cut), ConfigError);
}

TEST_CASE("tool exit codes")
{
    CHECK(run_tool("oracle maxcut --er 6,0.5,1") == 0);
    CHECK(run_tool("train --config /nonexistent/flowq.json") == kExitConfig);
    CHECK(run_tool("train") == kExitConfig);
    CHECK(run_tool("frobnicate") == kExitConfig);
    CHECK(run_tool("analyze --circuit /nonexistent/circuit.json") == kExitRuntime);
    CHECK(run_tool("oracle energy --observable /nonexistent/h.obs") == kExitRuntime);
    CHECK(run_tool("--help") == 0);
}
