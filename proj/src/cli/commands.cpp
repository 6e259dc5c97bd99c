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

#include "flowq/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "flowq/analysis/dla.hpp"
#include "flowq/cli/config.hpp"
#include "flowq/mdp/metrics.hpp"
#include "flowq/oracle/maxcut.hpp"
#include "flowq/oracle/spectrum.hpp"
#include "flowq/policy/checkpoint.hpp"
#include "flowq/policy/sampling.hpp"
#include "flowq/rewards/classify.hpp"
#include "flowq/rewards/maxcut.hpp"
#include "flowq/rewards/vqe.hpp"
#include "flowq/trainer/metrics_log.hpp"
#include "flowq/trainer/trainer.hpp"

namespace flowq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

RunConfig load_with_overrides(const fs::path &path, const Overrides &ov)
{
    RunConfig cfg = load_run_config(path);
    if (ov.seed) {
        cfg.train.seed = *ov.seed;
    }
    if (ov.jobs) {
        if (*ov.jobs < 1) {
            throw ConfigError("--jobs must be >= 1");
        }
        cfg.train.jobs = *ov.jobs;
    }
    if (ov.noise) {
        if (!(*ov.noise >= 0.0 && *ov.noise <= 1.0)) {
            throw ConfigError("--noise must be in [0,1]");
        }
        cfg.noise = *ov.noise;
    }
    if (ov.out) {
        cfg.output_dir = *ov.out;
    }
    return cfg;
}

void write_json(const fs::path &path, const json &doc)
{
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    f << doc.dump(2) << '\n';
}

std::string metrics_str(const CircuitMetrics &m)
{
    std::ostringstream s;
    s << "P=" << m.P << " D=" << m.D << " G=" << m.G << " C=" << m.C;
    return s.str();
}

json metrics_json(const CircuitMetrics &m)
{
    return {{"P", m.P}, {"D", m.D}, {"G", m.G}, {"C", m.C}};
}

std::pair<std::string, std::string> split_pair(const std::string &text, const char *what)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
        throw ConfigError(std::string(what) + " expects two comma-separated values");
    }
    return {text.substr(0, comma), text.substr(comma + 1)};
}

Observable maxcut_loss_observable(const Graph &graph)
{
    const Observable oc = maxcut_observable(graph);
    Observable loss(oc.n_qubits());
    const double scale = 1.0 / static_cast<double>(graph.n_edges());
    for (const auto &t : oc.terms()) {
        loss.add_term(-scale * t.coeff, t.string);
    }
    return loss;
}

// Task-specific lines shared by train and evaluate.
void report_task_result(const RunConfig &cfg, const TaskBundle &bundle, const CircuitArch &arch,
                        const std::vector<double> &theta, double loss, std::ostream &out,
                        json &report)
{
    if (cfg.task == "vqe" && bundle.ground_energy) {
        const double gap = loss - *bundle.ground_energy;
        out << "ground_energy " << std::setprecision(12) << *bundle.ground_energy << " gap "
            << std::setprecision(6) << gap << " chemical_accuracy "
            << (gap < kChemicalAccuracy ? "yes" : "no") << '\n';
        report["ground_energy"] = *bundle.ground_energy;
        report["gap"] = gap;
        report["chemical_accuracy"] = gap < kChemicalAccuracy;
    } else if (cfg.task == "maxcut") {
        const CutMetrics m = cut_metrics(arch, theta, *bundle.graph, *bundle.maxcut_optimum,
                                         cfg.maxcut.cvar_alpha);
        out << "maxcut_optimum " << *bundle.maxcut_optimum << " expectation_ratio "
            << m.expectation_ratio << " best_sampled_ratio " << m.best_sampled_ratio
            << " cvar_ratio " << m.cvar_ratio << '\n';
        report["maxcut_optimum"] = *bundle.maxcut_optimum;
        report["expectation_ratio"] = m.expectation_ratio;
        report["best_sampled_ratio"] = m.best_sampled_ratio;
        report["cvar_ratio"] = m.cvar_ratio;
    } else if (cfg.task == "classify") {
        const auto &task = dynamic_cast<const ClassifyTask &>(*bundle.task);
        const ClassifyResult train = classify_loss(arch, theta, task.data().train, task.encoding());
        const ClassifyResult test = classify_loss(arch, theta, task.data().test, task.encoding());
        out << "train_accuracy " << train.accuracy << " test_accuracy " << test.accuracy
            << " test_cross_entropy " << test.cross_entropy << '\n';
        report["train_accuracy"] = train.accuracy;
        report["test_accuracy"] = test.accuracy;
        report["test_cross_entropy"] = test.cross_entropy;
    }
}

} // namespace

int cmd_train(const TrainOptions &opt, std::ostream &out)
{
    RunConfig cfg = load_with_overrides(opt.config, opt.overrides);
    TaskBundle bundle = build_task(cfg);
    ActionSpace space = build_action_space(cfg, bundle.task->n_qubits());
    fs::create_directories(cfg.output_dir);
    if (cfg.train.nan_dump_path.empty()) {
        cfg.train.nan_dump_path = (cfg.output_dir / "abort_checkpoint.fqck").string();
    }

    std::optional<Trainer> trainer;
    if (opt.resume) {
        trainer.emplace(*bundle.task, space, cfg.train, load_checkpoint(opt.resume->string()));
    } else {
        trainer.emplace(*bundle.task, space, cfg.train);
    }

    const fs::path ckpt_path = cfg.output_dir / "checkpoint.fqck";

    const auto t0 = std::chrono::steady_clock::now();
    trainer->train([&](const MetricsRow &row) {
        if (row.epoch % 500 == 0) {
            spdlog::info("epoch {} mean_reward {:.4g} best_loss {:.8g} tb_loss {:.4g} unique {}",
                         row.epoch, row.mean_reward, row.best_loss, row.tb_loss,
                         row.unique_circuits);
        }
    });
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    save_metrics_csv((cfg.output_dir / "metrics.csv").string(), trainer->history());
    {
        std::ofstream plot(cfg.output_dir / "plot_data.csv");
        write_plot_data(plot, trainer->history(), 50);
    }
    save_checkpoint(ckpt_path.string(), trainer->checkpoint());

    BestCircuit best = trainer->best();
    json report = {{"task", cfg.task},
                   {"epochs", trainer->epoch()},
                   {"unique_circuits", trainer->cache().size()},
                   {"quantum_evals", trainer->quantum_evals()},
                   {"seconds", seconds}};
    out << "task " << cfg.task << " epochs " << trainer->epoch() << " unique_circuits "
        << trainer->cache().size() << " quantum_evals " << trainer->quantum_evals() << " time "
        << std::setprecision(4) << seconds << "s\n";
    if (!trainer->history().empty()) {
        const MetricsRow &last = trainer->history().back();
        out << "final mean_reward " << std::setprecision(6) << last.mean_reward << " tb_loss "
            << last.tb_loss << '\n';
        report["final_tb_loss"] = last.tb_loss;
        report["final_mean_reward"] = last.mean_reward;
    }
    if (!std::isfinite(best.loss)) {
        out << "no circuit was scored\n";
        write_json(cfg.output_dir / "summary.json", report);
        return kExitOk;
    }
    if (cfg.task == "classify") {
        const auto &task = dynamic_cast<const ClassifyTask &>(*bundle.task);
        Rng rng = make_rng(cfg.train.seed, 0xF17A1);
        TaskEvaluation final_fit = task.train_final(best.arch, rng, best.theta);
        best.theta = final_fit.theta;
        best.loss = final_fit.loss;
    }
    const CircuitMetrics m = metrics(best.arch);
    out << "best loss " << std::setprecision(12) << best.loss << ' ' << metrics_str(m) << '\n';
    report["best_loss"] = best.loss;
    report["best_metrics"] = metrics_json(m);
    report_task_result(cfg, bundle, best.arch, best.theta, best.loss, out, report);

    // Toy scores carry no angles.
    const bool has_theta = best.theta.size() == static_cast<std::size_t>(best.arch.n_params());
    save_circuit((cfg.output_dir / "best_circuit.json").string(), best.arch,
                 has_theta ? &best.theta : nullptr);
    write_json(cfg.output_dir / "summary.json", report);
    out << "wrote " << (cfg.output_dir / "metrics.csv").string() << ", best_circuit.json, "
        << "plot_data.csv, checkpoint.fqck, summary.json\n";
    return kExitOk;
}

int cmd_evaluate(const EvaluateOptions &opt, std::ostream &out)
{
    RunConfig cfg = load_with_overrides(opt.config, opt.overrides);
    if (opt.restarts < 0) {
        throw ConfigError("--restarts must be >= 0");
    }
    TaskBundle bundle = build_task(cfg);
    CircuitFile file = load_circuit(opt.circuit.string());
    if (file.arch.n_qubits() != bundle.task->n_qubits()) {
        throw std::runtime_error("circuit has " + std::to_string(file.arch.n_qubits()) +
                                 " qubits but the task needs " +
                                 std::to_string(bundle.task->n_qubits()));
    }
    Rng rng = make_rng(cfg.train.seed, 0xE7A1);
    const Backend backend = cfg.noise ? Backend::depolarizing(*cfg.noise) : Backend::pure();
    InnerLoopConfig inner = cfg.inner.value_or(InnerLoopConfig{});
    inner.restarts = std::max(1, opt.restarts + (file.theta ? 1 : 0));

    double loss = 0.0;
    std::vector<double> theta;
    if (cfg.task == "vqe") {
        const auto &task = dynamic_cast<const VqeTask &>(*bundle.task);
        VqeResult r = vqe_loss(file.arch, task.observable(), task.initial_state(), inner, rng,
                               backend, file.theta);
        loss = r.energy;
        theta = std::move(r.theta);
    } else if (cfg.task == "maxcut") {
        VqeResult r = vqe_loss(file.arch, maxcut_loss_observable(*bundle.graph),
                               StateVector::zero(file.arch.n_qubits()), inner, rng, backend,
                               file.theta);
        loss = 1.0 + r.energy;
        theta = std::move(r.theta);
    } else if (cfg.task == "classify") {
        const auto &task = dynamic_cast<const ClassifyTask &>(*bundle.task);
        TaskEvaluation e = task.train_final(file.arch, rng, file.theta);
        loss = e.loss;
        theta = std::move(e.theta);
    } else {
        TaskEvaluation e = bundle.task->evaluate(file.arch, rng);
        loss = e.loss;
        theta = file.theta.value_or(std::vector<double>(static_cast<std::size_t>(file.arch.n_params()), 0.0));
    }

    const CircuitMetrics m = metrics(file.arch);
    json report = {{"task", cfg.task},
                   {"loss", loss},
                   {"metrics", metrics_json(m)},
                   {"noise", cfg.noise ? json(*cfg.noise) : json(nullptr)}};
    out << "task " << cfg.task << " backend "
        << (cfg.noise ? "density(p=" + std::to_string(*cfg.noise) + ")" : std::string("pure"))
        << '\n';
    out << "loss " << std::setprecision(12) << loss << ' ' << metrics_str(m) << '\n';
    report_task_result(cfg, bundle, file.arch, theta, loss, out, report);
    if (opt.overrides.out) {
        fs::create_directories(*opt.overrides.out);
        save_circuit((*opt.overrides.out / "evaluated_circuit.json").string(), file.arch, &theta);
        write_json(*opt.overrides.out / "report.json", report);
    }
    return kExitOk;
}

int cmd_sample(const SampleOptions &opt, std::ostream &out)
{
    if (opt.count < 1) {
        throw ConfigError("-n must be >= 1");
    }
    if (!(opt.epsilon >= 0.0 && opt.epsilon <= 1.0)) {
        throw ConfigError("--epsilon must be in [0,1]");
    }
    Checkpoint ckpt = load_checkpoint(opt.checkpoint.string());
    const ActionSpace space = action_space_from_meta(ckpt.meta);
    Budgets budgets{ckpt.meta.at("max_gates").get<int>(), ckpt.meta.at("max_params").get<int>()};
    if (ckpt.policy.config().action_count != static_cast<int>(space.size())) {
        throw std::runtime_error("checkpoint policy does not match its action space");
    }
    const fs::path dir = opt.out.value_or("samples");
    fs::create_directories(dir);

    std::set<std::string> unique;
    json listing = json::array();
    double sum_p = 0, sum_d = 0, sum_g = 0, sum_c = 0;
    for (int i = 0; i < opt.count; ++i) {
        Rng rng = make_rng(opt.seed, 0x5A3D, static_cast<std::uint64_t>(i));
        Rollout r = sample_rollout(ckpt.policy, space, budgets, rng, opt.epsilon);
        const CircuitArch &arch = r.terminal.arch;
        std::ostringstream name;
        name << "sample_" << std::setw(4) << std::setfill('0') << i << ".json";
        save_circuit((dir / name.str()).string(), arch);
        const std::string key = canonical_key(arch);
        unique.insert(key);
        const CircuitMetrics m = metrics(arch);
        sum_p += m.P;
        sum_d += m.D;
        sum_g += m.G;
        sum_c += m.C;
        listing.push_back({{"file", name.str()}, {"key", key}, {"logprob", r.sum_logprob()}});
    }
    const double n = opt.count;
    json summary = {{"samples", opt.count},
                    {"unique", unique.size()},
                    {"mean_P", sum_p / n},
                    {"mean_D", sum_d / n},
                    {"mean_G", sum_g / n},
                    {"mean_C", sum_c / n},
                    {"circuits", listing}};
    write_json(dir / "summary.json", summary);
    out << "samples " << opt.count << " unique " << unique.size() << " mean P "
        << sum_p / n << " D " << sum_d / n << " G " << sum_g / n << " C " << sum_c / n << '\n';
    out << "wrote " << opt.count << " circuits to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_oracle_energy(const OracleEnergyOptions &opt, std::ostream &out)
{
    ObservableFile file = load_observable(opt.observable.string());
    const Observable &obs = file.observable;
    if (obs.n_qubits() > kMaxOracleQubits) {
        throw ConfigError("oracle energy supports at most " + std::to_string(kMaxOracleQubits) +
                          " qubits");
    }
    const SpectrumResult exact = exact_extremes(obs, false);
    const SpectrumResult power = power_iteration_min(obs);
    out << std::setprecision(15) << "qubits " << obs.n_qubits() << " terms " << obs.terms().size()
        << '\n'
        << "min_eigenvalue " << exact.min_eigenvalue << '\n'
        << "max_eigenvalue " << exact.max_eigenvalue << '\n'
        << "power_iteration_min " << power.min_eigenvalue << " (difference "
        << std::setprecision(3) << power.min_eigenvalue - exact.min_eigenvalue << ")\n";
    if (file.prepare) {
        StateVector ref = StateVector::from_bits(*file.prepare);
        out << std::setprecision(15) << "reference_energy " << expectation(ref, obs) << " ("
            << *file.prepare << ")\n";
    }
    return kExitOk;
}

int cmd_oracle_maxcut(const OracleMaxCutOptions &opt, std::ostream &out)
{
    if (opt.graph.has_value() == opt.erdos_renyi.has_value()) {
        throw ConfigError("oracle maxcut needs exactly one of --graph or --er");
    }
    Graph graph;
    if (opt.graph) {
        graph = load_graph(opt.graph->string());
    } else {
        std::vector<std::string> parts;
        std::stringstream ss(*opt.erdos_renyi);
        std::string item;
        while (std::getline(ss, item, ',')) {
            parts.push_back(item);
        }
        if (parts.size() != 3) {
            throw ConfigError("--er expects n,p_e,seed");
        }
        int n = 0;
        double p = 0;
        std::uint64_t seed = 0;
        try {
            n = std::stoi(parts[0]);
            p = std::stod(parts[1]);
            seed = std::stoull(parts[2]);
        } catch (const std::exception &) {
            throw ConfigError("--er expects n,p_e,seed");
        }
        if (n < 1 || !(p >= 0.0 && p <= 1.0)) {
            throw ConfigError("--er needs n >= 1 and p_e in [0,1]");
        }
        Rng rng(seed);
        graph = erdos_renyi(n, p, rng);
    }
    const MaxCutSolution sol = brute_force_maxcut(graph);
    std::string side;
    for (int v = 0; v < graph.n_vertices(); ++v) {
        side += ((sol.partition >> v) & 1U) ? '1' : '0';
    }
    out << "vertices " << graph.n_vertices() << " edges " << graph.n_edges() << '\n'
        << "maxcut " << sol.value << " partition " << side << '\n';
    return kExitOk;
}

int cmd_analyze(const AnalyzeOptions &opt, std::ostream &out)
{
    CircuitFile file = load_circuit(opt.circuit.string());
    const CircuitArch &arch = file.arch;
    out << "qubits " << arch.n_qubits() << ' ' << metrics_str(metrics(arch)) << '\n';
    const std::vector<SignedPauli> gens = effective_generators(arch);
    if (gens.empty()) {
        out << "no rotations, so there are no generators\n";
        return kExitOk;
    }
    out << "generators";
    for (const auto &g : gens) {
        out << ' ' << g.str();
    }
    out << '\n';
    const GeneratorSet set(gens);
    out << "distinct " << set.size() << " pairwise_commuting "
        << (set.pairwise_commuting() ? "yes" : "no") << '\n';
    const LieClosure closure = lie_closure(set, opt.max_dim);
    out << "closure_dimension " << closure.dimension << (closure.capped ? " (capped)" : "") << '\n';
    if (opt.subspace) {
        const auto [a, b] = split_pair(*opt.subspace, "--subspace");
        for (const auto &g : gens) {
            TwoLevelProjection p;
            try {
                p = project_two_level(g, a, b);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(std::string("--subspace: ") + e.what());
            }
            out << "projection " << g.str() << " -> " << two_level_class_name(p.kind);
            if (p.kind != TwoLevelClass::Zero && p.kind != TwoLevelClass::Mixed) {
                out << " coefficient (" << p.coefficient.real() << ',' << p.coefficient.imag()
                    << ')';
            }
            out << '\n';
        }
    }
    return kExitOk;
}

int cmd_plotdata(const PlotDataOptions &opt, std::ostream &out)
{
    if (opt.window < 1) {
        throw ConfigError("--window must be >= 1");
    }
    const std::vector<MetricsRow> rows = load_metrics_csv(opt.metrics.string());
    if (opt.out) {
        std::ofstream f(*opt.out);
        if (!f) {
            throw std::runtime_error("cannot write '" + opt.out->string() + "'");
        }
        write_plot_data(f, rows, opt.window);
        out << "wrote " << rows.size() << " rows to " << opt.out->string() << '\n';
    } else {
        write_plot_data(out, rows, opt.window);
    }
    return kExitOk;
}

} // namespace flowq::cli
