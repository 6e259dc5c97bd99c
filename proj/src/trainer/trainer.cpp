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

#include "flowq/trainer/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <spdlog/spdlog.h>

#include "flowq/trainer/reward.hpp"
#include "flowq/trainer/tb_loss.hpp"

namespace flowq {

double EpsilonSchedule::at(int epoch, int total_epochs) const
{
    const double horizon = decay_fraction * static_cast<double>(total_epochs);
    if (horizon <= 0.0) {
        return 0.0;
    }
    return start * std::max(0.0, 1.0 - static_cast<double>(epoch) / horizon);
}

void TrainConfig::validate() const
{
    auto fail = [](const std::string &what) { throw std::invalid_argument("train config: " + what); };
    if (!(beta > 0.0)) {
        fail("beta must be > 0");
    }
    if (batch_size < 1) {
        fail("batch_size must be >= 1");
    }
    if (update_every < 1) {
        fail("update_every must be >= 1");
    }
    if (!(lr_policy > 0.0) || !(lr_log_z > 0.0)) {
        fail("learning rates must be > 0");
    }
    if (epochs < 0) {
        fail("epochs must be >= 0");
    }
    if (max_evaluations < 0) {
        fail("max_evaluations must be >= 0");
    }
    if (!(epsilon.start >= 0.0 && epsilon.start <= 1.0) || epsilon.decay_fraction < 0.0) {
        fail("epsilon start must be in [0,1] and decay_fraction >= 0");
    }
    if (jobs < 1) {
        fail("jobs must be >= 1");
    }
    if (baseline_warmup < 0) {
        fail("baseline warmup must be >= 0");
    }
    if (baseline_value && !std::isfinite(*baseline_value)) {
        fail("baseline value must be finite");
    }
    budgets.validate();
}

std::optional<CacheEntry> RewardCache::find(const std::string &key) const
{
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void RewardCache::insert(const std::string &key, CacheEntry entry)
{
    std::unique_lock lock(mutex_);
    map_.emplace(key, std::move(entry));
}

std::size_t RewardCache::size() const
{
    std::shared_lock lock(mutex_);
    return map_.size();
}

std::vector<std::pair<std::string, CacheEntry>> RewardCache::entries() const
{
    std::shared_lock lock(mutex_);
    return {map_.begin(), map_.end()};
}

namespace {

PolicyConfig make_policy_config(const ActionSpace &space, const TrainConfig &config)
{
    PolicyConfig pc;
    pc.n_layers = config.policy.n_layers;
    pc.n_heads = config.policy.n_heads;
    pc.embed_dim = config.policy.embed_dim;
    pc.hidden_dim = config.policy.hidden_dim;
    pc.action_count = static_cast<int>(space.size());
    pc.vocab_size = space.vocab_size();
    pc.max_seq_len = config.budgets.max_gates + 1;
    return pc;
}

TransformerPolicy fresh_policy(const ActionSpace &space, const TrainConfig &config)
{
    config.validate();
    Rng rng = make_rng(config.seed, 0xC0FFEE);
    return TransformerPolicy(make_policy_config(space, config), rng);
}

} // namespace

Trainer::Trainer(const Task &task, ActionSpace space, TrainConfig config)
    : task_(task), space_(std::move(space)), config_(std::move(config)),
      policy_(fresh_policy(space_, config_)), adam_(policy_.size()), adam_log_z_(1),
      baseline_(config_.baseline_mode, config_.baseline_value.value_or(task.default_baseline()),
                config_.baseline_warmup)
{
    if (task_.n_qubits() != space_.n_qubits()) {
        throw std::invalid_argument("Trainer: task and action space qubit counts differ");
    }
}

Trainer::Trainer(const Task &task, ActionSpace space, TrainConfig config, Checkpoint resume)
    : Trainer(task, std::move(space), std::move(config))
{
    if (resume.policy.config().action_count != static_cast<int>(space_.size()) ||
        resume.policy.config().max_seq_len < config_.budgets.max_gates + 1) {
        throw std::invalid_argument("Trainer: checkpoint does not match the action space/budgets");
    }
    policy_ = std::move(resume.policy);
    adam_ = std::move(resume.adam);
    adam_log_z_ = std::move(resume.adam_log_z);
}

bool Trainer::evaluation_budget_exhausted() const
{
    return config_.max_evaluations > 0 &&
           static_cast<std::int64_t>(cache_.size()) + config_.batch_size > config_.max_evaluations;
}

TrajectoryRecord Trainer::sample_one(int index, int attempt)
{
    const auto stream = static_cast<std::uint64_t>(index) * 64 + static_cast<std::uint64_t>(attempt);
    Rng rng = make_rng(config_.seed, static_cast<std::uint64_t>(epoch_) + 1, 2 * stream);
    const double eps = config_.epsilon.at(epoch_, config_.epochs);
    Rollout r = sample_rollout(policy_, space_, config_.budgets, rng, eps);
    TrajectoryRecord rec;
    rec.actions = std::move(r.actions);
    rec.masks = std::move(r.masks);
    rec.logprobs = std::move(r.logprobs);
    rec.arch = std::move(r.terminal.arch);
    return rec;
}

void Trainer::abort_training(const std::string &reason) const
{
    if (!config_.nan_dump_path.empty()) {
        save_checkpoint(config_.nan_dump_path, checkpoint());
        spdlog::error("{}; checkpoint written to {}", reason, config_.nan_dump_path);
    }
    throw std::runtime_error(reason);
}

void Trainer::score_batch(std::vector<TrajectoryRecord> &batch)
{
    constexpr int kMaxAttempts = 8;
    std::vector<int> attempts(batch.size(), 0);
    std::vector<std::string> errors_by_index(batch.size());
    for (;;) {
        // Distinct uncached architectures in batch order.
        std::vector<std::size_t> todo;
        std::vector<std::string> keys(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            keys[i] = canonical_key(batch[i].arch);
            if (cache_.find(keys[i])) {
                continue;
            }
            const bool dup = std::any_of(todo.begin(), todo.end(),
                                         [&](std::size_t j) { return keys[j] == keys[i]; });
            if (!dup) {
                todo.push_back(i);
            }
        }

        std::vector<std::optional<TaskEvaluation>> results(todo.size());
        std::vector<std::string> errors(todo.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k = next.fetch_add(1); k < todo.size(); k = next.fetch_add(1)) {
                const std::size_t i = todo[k];
                const auto stream = i * 64 + static_cast<std::size_t>(attempts[i]);
                Rng rng = make_rng(config_.seed, static_cast<std::uint64_t>(epoch_) + 1, 2 * stream + 1);
                try {
                    results[k] = task_.evaluate(batch[i].arch, rng);
                    if (!std::isfinite(results[k]->loss)) {
                        errors[k] = "non-finite loss";
                        results[k].reset();
                    }
                } catch (const std::exception &e) {
                    errors[k] = e.what();
                }
            }
        };
        const int n_threads = std::min<int>(config_.jobs, static_cast<int>(todo.size()));
        if (n_threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < n_threads; ++t) {
                pool.emplace_back(worker);
            }
            for (auto &th : pool) {
                th.join();
            }
        }

        std::vector<std::size_t> failed;
        for (std::size_t k = 0; k < todo.size(); ++k) {
            const std::size_t i = todo[k];
            if (!results[k]) {
                errors_by_index[i] = errors[k];
                spdlog::warn("evaluation of {} failed: {}; resampling", keys[i], errors[k]);
                failed.push_back(i);
                continue;
            }
            quantum_evals_ += results[k]->quantum_evals;
            cache_.insert(keys[i], {batch[i].arch, results[k]->loss, std::move(results[k]->theta)});
        }
        if (failed.empty()) {
            break;
        }
        for (std::size_t i : failed) {
            if (++attempts[i] >= kMaxAttempts) {
                abort_training("task evaluation failed repeatedly for " + keys[i] + ": " + errors_by_index[i]);
            }
            batch[i] = sample_one(static_cast<int>(i), attempts[i]);
        }
    }

    for (auto &rec : batch) {
        const CacheEntry entry = *cache_.find(canonical_key(rec.arch));
        rec.loss = entry.loss;
        rec.theta = entry.theta;
        baseline_.observe(rec.loss, epoch_);
        if (rec.loss < best_.loss) {
            best_ = {rec.arch, rec.theta, rec.loss};
        }
    }
    const double b = baseline_.value();
    for (auto &rec : batch) {
        rec.reward = reward_from_loss(rec.loss, config_.beta, b);
    }
}

double Trainer::gradient_step(const std::vector<TrajectoryRecord> &batch)
{
    const double b = baseline_.value();
    const double n = static_cast<double>(batch.size());
    std::vector<double> grad(policy_.size(), 0.0);
    double grad_log_z = 0.0;
    double loss = 0.0;
    ForwardCache fc;
    RowMatrix dlogits;
    for (const auto &rec : batch) {
        const double slp = trajectory_logprob(policy_, space_, rec.actions, rec.masks, &fc, &dlogits);
        const double delta = tb_residual({slp, log_reward_from_loss(rec.loss, config_.beta, b)},
                                         policy_.log_z());
        loss += delta * delta / n;
        const double upstream = 2.0 * delta / n;
        grad_log_z += upstream;
        dlogits *= upstream;
        policy_.backward(fc, dlogits, grad);
    }
    if (!std::isfinite(loss)) {
        abort_training("non-finite TB loss at epoch " + std::to_string(epoch_));
    }
    adam_step(policy_.params(), grad, adam_, config_.lr_policy);
    double log_z = policy_.log_z();
    adam_step(std::span<double>(&log_z, 1), std::span<const double>(&grad_log_z, 1), adam_log_z_,
              config_.lr_log_z);
    policy_.log_z() = log_z;
    return loss;
}

MetricsRow Trainer::run_epoch()
{
    std::vector<TrajectoryRecord> batch;
    batch.reserve(static_cast<std::size_t>(config_.batch_size));
    for (int i = 0; i < config_.batch_size; ++i) {
        batch.push_back(sample_one(i, 0));
    }
    score_batch(batch);

    MetricsRow row;
    row.epoch = epoch_;
    double reward_sum = 0.0;
    std::vector<TbTerm> terms;
    for (const auto &rec : batch) {
        reward_sum += rec.reward;
        double slp = 0.0;
        for (double lp : rec.logprobs) {
            slp += lp;
        }
        terms.push_back({slp, std::log(rec.reward)});
    }
    row.mean_reward = reward_sum / static_cast<double>(batch.size());
    row.tb_loss = tb_loss(terms, policy_.log_z());

    pending_.insert(pending_.end(), batch.begin(), batch.end());
    if (static_cast<int>(pending_.size()) >= config_.update_every) {
        row.tb_loss = gradient_step(pending_);
        pending_.clear();
    }
    row.best_loss = best_.loss;
    row.unique_circuits = static_cast<std::int64_t>(cache_.size());
    row.quantum_evals = quantum_evals_;
    last_batch_ = std::move(batch);
    history_.push_back(row);
    ++epoch_;
    return row;
}

std::vector<MetricsRow> Trainer::train(const std::function<void(const MetricsRow &)> &on_epoch)
{
    while (epoch_ < config_.epochs && !evaluation_budget_exhausted()) {
        const MetricsRow row = run_epoch();
        if (on_epoch) {
            on_epoch(row);
        }
    }
    return history_;
}

nlohmann::json Trainer::space_meta() const
{
    nlohmann::json gates = nlohmann::json::array();
    for (GateKind k : space_.gate_set()) {
        gates.push_back(std::string(gate_name(k)));
    }
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto &[c, t] : space_.connectivity().pairs()) {
        pairs.push_back({c, t});
    }
    return {{"n_qubits", space_.n_qubits()},
            {"gate_set", gates},
            {"connectivity", pairs},
            {"max_gates", config_.budgets.max_gates},
            {"max_params", config_.budgets.max_params},
            {"task", task_.name()},
            {"epoch", epoch_}};
}

Checkpoint Trainer::checkpoint() const
{
    return {policy_, adam_, adam_log_z_, space_meta()};
}

} // namespace flowq
