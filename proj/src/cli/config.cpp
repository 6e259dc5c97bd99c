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

#include "flowq/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "flowq/oracle/maxcut.hpp"
#include "flowq/oracle/spectrum.hpp"
#include "flowq/rewards/dataset.hpp"
#include "flowq/rewards/maxcut.hpp"
#include "flowq/rewards/toy.hpp"
#include "flowq/rewards/vqe.hpp"
#include "flowq/trainer/baseline.hpp"

namespace flowq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Reads typed keys from one JSON object and remembers which ones were used,
// so that anything left over can be reported as unknown.
class Section {
  public:
    Section(const json &doc, std::string path) : doc_(doc), path_(std::move(path))
    {
        if (!doc_.is_object()) {
            throw ConfigError("config: '" + path_ + "' must be an object");
        }
    }

    bool has(const std::string &key)
    {
        used_.insert(key);
        return doc_.contains(key) && !doc_.at(key).is_null();
    }

    template <class T>
    void read(const std::string &key, T &out)
    {
        if (has(key)) {
            out = get<T>(key);
        }
    }

    template <class T>
    void read(const std::string &key, std::optional<T> &out)
    {
        if (has(key)) {
            out = get<T>(key);
        }
    }

    template <class T>
    T required(const std::string &key)
    {
        if (!has(key)) {
            throw ConfigError("config: missing required key '" + where(key) + "'");
        }
        return get<T>(key);
    }

    Section child(const std::string &key)
    {
        used_.insert(key);
        return Section(doc_.at(key), where(key));
    }

    const json &raw(const std::string &key)
    {
        used_.insert(key);
        return doc_.at(key);
    }

    void finish() const
    {
        for (const auto &item : doc_.items()) {
            if (!used_.count(item.key())) {
                throw ConfigError("config: unknown key '" + where(item.key()) + "'");
            }
        }
    }

    std::string where(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

  private:
    template <class T>
    T get(const std::string &key) const
    {
        const json &v = doc_.at(key);
        try {
            if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) {
                    throw ConfigError("");
                }
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer()) {
                    throw ConfigError("");
                }
                if constexpr (std::is_unsigned_v<T>) {
                    if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
                        throw ConfigError("");
                    }
                }
            } else if constexpr (std::is_floating_point_v<T>) {
                if (!v.is_number()) {
                    throw ConfigError("");
                }
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) {
                    throw ConfigError("");
                }
            }
            return v.get<T>();
        } catch (const std::exception &) {
            throw ConfigError("config: key '" + where(key) + "' has the wrong type");
        }
    }

    const json &doc_;
    std::string path_;
    std::set<std::string> used_;
};

fs::path resolve(const fs::path &base, const std::string &p)
{
    fs::path path(p);
    if (path.is_relative() && !base.empty()) {
        return base / path;
    }
    return path;
}

InnerLoopConfig parse_inner(Section s, InnerLoopConfig inner)
{
    s.read("restarts", inner.restarts);
    s.read("max_steps", inner.max_steps);
    s.read("lr", inner.lr);
    s.read("grad_tol", inner.grad_tol);
    s.finish();
    try {
        inner.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return inner;
}

void parse_train(Section s, TrainConfig &t)
{
    s.read("beta", t.beta);
    if (s.has("baseline_mode")) {
        try {
            t.baseline_mode = baseline_mode_from_name(s.required<std::string>("baseline_mode"));
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("config: train.baseline_mode: ") + e.what());
        }
    }
    s.read("baseline_value", t.baseline_value);
    s.read("baseline_warmup", t.baseline_warmup);
    s.read("batch_size", t.batch_size);
    s.read("update_every", t.update_every);
    s.read("lr_policy", t.lr_policy);
    s.read("lr_log_z", t.lr_log_z);
    s.read("epochs", t.epochs);
    s.read("max_evaluations", t.max_evaluations);
    s.read("max_gates", t.budgets.max_gates);
    s.read("max_params", t.budgets.max_params);
    s.read("seed", t.seed);
    s.read("epsilon_start", t.epsilon.start);
    s.read("epsilon_decay_fraction", t.epsilon.decay_fraction);
    s.read("jobs", t.jobs);
    s.finish();
}

void parse_policy(Section s, PolicyShape &p)
{
    s.read("n_layers", p.n_layers);
    s.read("n_heads", p.n_heads);
    s.read("embed_dim", p.embed_dim);
    s.read("hidden_dim", p.hidden_dim);
    s.finish();
    if (p.n_layers < 1 || p.n_heads < 1 || p.embed_dim < 1 || p.hidden_dim < 1 ||
        p.embed_dim % p.n_heads != 0) {
        throw ConfigError("config: policy sizes must be positive with embed_dim divisible by n_heads");
    }
}

void parse_action_space(Section s, RunConfig &cfg)
{
    if (s.has("gate_set")) {
        const json &gates = s.raw("gate_set");
        if (!gates.is_array() || gates.empty()) {
            throw ConfigError("config: action_space.gate_set must be a non-empty array");
        }
        cfg.gate_set.clear();
        for (const auto &g : gates) {
            if (!g.is_string()) {
                throw ConfigError("config: action_space.gate_set entries must be strings");
            }
            try {
                cfg.gate_set.push_back(gate_kind_from_name(g.get<std::string>()));
            } catch (const std::exception &e) {
                throw ConfigError(std::string("config: action_space.gate_set: ") + e.what());
            }
        }
        if (std::none_of(cfg.gate_set.begin(), cfg.gate_set.end(),
                         [](GateKind k) { return is_rotation(k); })) {
            throw ConfigError("config: action_space.gate_set needs at least one rotation");
        }
    }
    if (s.has("connectivity")) {
        const json &c = s.raw("connectivity");
        if (c.is_string()) {
            cfg.connectivity = c.get<std::string>();
            if (cfg.connectivity != "all_to_all" && cfg.connectivity != "line") {
                throw ConfigError("config: action_space.connectivity must be all_to_all, line or "
                                  "a list of [control, target] pairs");
            }
        } else if (c.is_array()) {
            cfg.connectivity = "pairs";
            for (const auto &p : c) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
                    !p[1].is_number_integer()) {
                    throw ConfigError("config: action_space.connectivity pairs must be [c, t]");
                }
                cfg.connectivity_pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
            }
        } else {
            throw ConfigError("config: action_space.connectivity has the wrong type");
        }
    }
    s.finish();
}

} // namespace

RunConfig parse_run_config(const json &doc, const fs::path &base_dir)
{
    RunConfig cfg;
    Section root(doc, "");
    cfg.task = root.required<std::string>("task");
    if (cfg.task != "toy" && cfg.task != "vqe" && cfg.task != "maxcut" && cfg.task != "classify") {
        throw ConfigError("config: task must be one of toy, vqe, maxcut, classify (got '" +
                          cfg.task + "')");
    }
    if (root.has("output_dir")) {
        cfg.output_dir = resolve(base_dir, root.required<std::string>("output_dir"));
    }
    if (root.has("noise")) {
        cfg.noise = root.required<double>("noise");
        if (!(*cfg.noise >= 0.0 && *cfg.noise <= 1.0)) {
            throw ConfigError("config: noise must be in [0,1]");
        }
    }
    if (root.has("train")) {
        parse_train(root.child("train"), cfg.train);
    }
    if (root.has("policy")) {
        parse_policy(root.child("policy"), cfg.train.policy);
    }
    if (root.has("action_space")) {
        parse_action_space(root.child("action_space"), cfg);
    }
    if (root.has("inner")) {
        const InnerLoopConfig defaults = cfg.task == "classify" ? classify_search_inner()
                                                                : InnerLoopConfig{};
        cfg.inner = parse_inner(root.child("inner"), defaults);
    }

    // Only the block matching the task may appear.
    for (const std::string block : {"toy", "vqe", "maxcut", "classify"}) {
        if (block != cfg.task && root.has(block)) {
            throw ConfigError("config: block '" + block + "' does not apply to task '" + cfg.task +
                              "'");
        }
    }

    if (cfg.task == "toy") {
        if (root.has("toy")) {
            Section s = root.child("toy");
            s.read("n_qubits", cfg.toy.n_qubits);
            s.read("target_gates", cfg.toy.target_gates);
            s.finish();
        }
        if (cfg.toy.n_qubits < 1 || cfg.toy.target_gates < 0) {
            throw ConfigError("config: toy.n_qubits must be >= 1 and toy.target_gates >= 0");
        }
    } else if (cfg.task == "vqe") {
        if (!root.has("vqe")) {
            throw ConfigError("config: missing required block 'vqe'");
        }
        Section s = root.child("vqe");
        cfg.vqe.observable = resolve(base_dir, s.required<std::string>("observable"));
        s.read("prepare", cfg.vqe.prepare);
        s.finish();
    } else if (cfg.task == "maxcut") {
        if (!root.has("maxcut")) {
            throw ConfigError("config: missing required block 'maxcut'");
        }
        Section s = root.child("maxcut");
        if (s.has("graph")) {
            cfg.maxcut.graph = resolve(base_dir, s.required<std::string>("graph"));
        }
        if (s.has("erdos_renyi")) {
            Section er = s.child("erdos_renyi");
            ErdosRenyiSpec spec;
            spec.n = er.required<int>("n");
            spec.p_e = er.required<double>("p_e");
            spec.seed = er.required<std::uint64_t>("seed");
            er.finish();
            if (spec.n < 2 || !(spec.p_e >= 0.0 && spec.p_e <= 1.0)) {
                throw ConfigError("config: maxcut.erdos_renyi needs n >= 2 and p_e in [0,1]");
            }
            cfg.maxcut.erdos_renyi = spec;
        }
        s.read("cvar_alpha", cfg.maxcut.cvar_alpha);
        s.finish();
        if (cfg.maxcut.graph.has_value() == cfg.maxcut.erdos_renyi.has_value()) {
            throw ConfigError("config: maxcut needs exactly one of 'graph' or 'erdos_renyi'");
        }
        if (!(cfg.maxcut.cvar_alpha > 0.0 && cfg.maxcut.cvar_alpha <= 1.0)) {
            throw ConfigError("config: maxcut.cvar_alpha must be in (0,1]");
        }
    } else {
        if (!root.has("classify")) {
            throw ConfigError("config: missing required block 'classify'");
        }
        Section s = root.child("classify");
        if (s.has("dataset")) {
            cfg.classify.dataset = resolve(base_dir, s.required<std::string>("dataset"));
        }
        if (s.has("synth")) {
            Section sy = s.child("synth");
            SynthSpec spec;
            sy.read("dim", spec.dim);
            sy.read("n_samples", spec.n_samples);
            sy.read("margin", spec.margin);
            sy.read("sigma", spec.sigma);
            sy.read("seed", spec.seed);
            sy.finish();
            if (spec.dim < 1 || spec.n_samples < 2 || !(spec.sigma > 0.0) || spec.margin < 0.0) {
                throw ConfigError("config: classify.synth needs dim >= 1, n_samples >= 2, "
                                  "sigma > 0 and margin >= 0");
            }
            cfg.classify.synth = spec;
        }
        s.read("test_fraction", cfg.classify.test_fraction);
        s.read("split_seed", cfg.classify.split_seed);
        if (s.has("encoding")) {
            try {
                cfg.classify.encoding = encoding_from_name(s.required<std::string>("encoding"));
            } catch (const std::invalid_argument &e) {
                throw ConfigError(std::string("config: classify.encoding: ") + e.what());
            }
        }
        if (s.has("final_inner")) {
            cfg.classify.final_inner = parse_inner(s.child("final_inner"), InnerLoopConfig{});
        }
        s.finish();
        if (cfg.classify.dataset.has_value() == cfg.classify.synth.has_value()) {
            throw ConfigError("config: classify needs exactly one of 'dataset' or 'synth'");
        }
        if (!(cfg.classify.test_fraction > 0.0 && cfg.classify.test_fraction < 1.0)) {
            throw ConfigError("config: classify.test_fraction must be in (0,1)");
        }
    }
    root.finish();

    try {
        cfg.train.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const fs::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config: '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_run_config(doc, path.parent_path());
}

TaskBundle build_task(const RunConfig &cfg)
{
    TaskBundle bundle;
    const Backend backend = cfg.noise ? Backend::depolarizing(*cfg.noise) : Backend::pure();
    if (cfg.noise && (cfg.task == "toy" || cfg.task == "classify")) {
        throw ConfigError("config: noise is only supported for vqe and maxcut tasks");
    }
    if (cfg.task == "toy") {
        bundle.task = std::make_unique<ToyTask>(cfg.toy.n_qubits, cfg.toy.target_gates);
    } else if (cfg.task == "vqe") {
        ObservableFile file = load_observable(cfg.vqe.observable.string());
        std::string prepare = cfg.vqe.prepare.value_or(file.prepare.value_or(""));
        if (!prepare.empty()) {
            basis_index_from_bits(prepare, file.observable.n_qubits());
        }
        if (file.observable.n_qubits() <= kMaxOracleQubits) {
            bundle.ground_energy = exact_extremes(file.observable, false).min_eigenvalue;
        }
        bundle.task = std::make_unique<VqeTask>(std::move(file.observable), prepare,
                                                cfg.inner.value_or(InnerLoopConfig{}), backend);
    } else if (cfg.task == "maxcut") {
        Graph graph;
        if (cfg.maxcut.graph) {
            graph = load_graph(cfg.maxcut.graph->string());
        } else {
            Rng rng(cfg.maxcut.erdos_renyi->seed);
            graph = erdos_renyi(cfg.maxcut.erdos_renyi->n, cfg.maxcut.erdos_renyi->p_e, rng);
        }
        if (graph.n_edges() == 0) {
            throw ConfigError("config: the Max-Cut graph has no edges");
        }
        bundle.maxcut_optimum = brute_force_maxcut(graph).value;
        bundle.graph = graph;
        bundle.task = std::make_unique<MaxCutTask>(std::move(graph), cfg.inner.value_or(InnerLoopConfig{}),
                                                   cfg.maxcut.cvar_alpha, backend);
    } else {
        Dataset data;
        if (cfg.classify.dataset) {
            data = load_dataset(cfg.classify.dataset->string());
        } else {
            const SynthSpec &s = *cfg.classify.synth;
            Rng rng(s.seed);
            data = synth_dataset(rng, s.dim, s.n_samples, s.margin, s.sigma);
        }
        Rng split_rng(cfg.classify.split_seed);
        DatasetSplit split = split_dataset(data, cfg.classify.test_fraction, split_rng);
        bundle.task = std::make_unique<ClassifyTask>(
            std::move(split), cfg.classify.encoding, cfg.inner.value_or(classify_search_inner()),
            cfg.classify.final_inner);
    }
    return bundle;
}

ActionSpace build_action_space(const RunConfig &cfg, int n_qubits)
{
    try {
        Connectivity conn;
        if (cfg.connectivity == "all_to_all") {
            conn = Connectivity::all_to_all(n_qubits);
        } else if (cfg.connectivity == "line") {
            conn = Connectivity::line(n_qubits);
        } else {
            conn = Connectivity::from_pairs(n_qubits, cfg.connectivity_pairs);
        }
        return ActionSpace(n_qubits, cfg.gate_set, std::move(conn));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("config: action_space: ") + e.what());
    }
}

ActionSpace action_space_from_meta(const json &meta)
{
    try {
        const int n = meta.at("n_qubits").get<int>();
        std::vector<GateKind> gates;
        for (const auto &g : meta.at("gate_set")) {
            gates.push_back(gate_kind_from_name(g.get<std::string>()));
        }
        std::vector<std::pair<int, int>> pairs;
        for (const auto &p : meta.at("connectivity")) {
            pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        }
        return ActionSpace(n, std::move(gates), Connectivity::from_pairs(n, std::move(pairs)));
    } catch (const std::exception &e) {
        throw std::runtime_error(std::string("checkpoint metadata does not describe an action space: ") +
                                 e.what());
    }
}

} // namespace flowq::cli
