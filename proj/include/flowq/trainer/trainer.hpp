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
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "flowq/common/adam.hpp"
#include "flowq/mdp/action_space.hpp"
#include "flowq/mdp/mdp.hpp"
#include "flowq/policy/checkpoint.hpp"
#include "flowq/policy/sampling.hpp"
#include "flowq/rewards/task.hpp"
#include "flowq/trainer/baseline.hpp"
#include "flowq/trainer/metrics_log.hpp"

namespace flowq {

/// epsilon(epoch) = start * max(0, 1 - epoch / (decay_fraction * epochs)).
struct EpsilonSchedule {
    double start = 0.05;
    double decay_fraction = 0.5;

    double at(int epoch, int total_epochs) const;
};

struct PolicyShape {
    int n_layers = 2;
    int n_heads = 4;
    int embed_dim = 64;
    int hidden_dim = 256;
};

struct TrainConfig {
    double beta = 1.0;
    BaselineMode baseline_mode = BaselineMode::Fixed;
    /// Fixed offset; the task default (e.g. the reference energy) when unset.
    std::optional<double> baseline_value;
    int baseline_warmup = 50;
    /// Trajectories per epoch.
    int batch_size = 5;
    /// Trajectories collected per gradient step.
    int update_every = 5;
    double lr_policy = 1e-4;
    double lr_log_z = 1e-2;
    int epochs = 1000;
    /// Stop once this many distinct circuits have been scored (0 = no limit).
    std::int64_t max_evaluations = 0;
    Budgets budgets;
    std::uint64_t seed = 0;
    EpsilonSchedule epsilon;
    PolicyShape policy;
    int jobs = 1;
    /// Where a checkpoint is dumped when training aborts on a non-finite loss or
    /// repeated evaluation failures (empty = none).
    std::string nan_dump_path;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// One sampled trajectory with its score.
struct TrajectoryRecord {
    std::vector<int> actions;
    std::vector<std::vector<bool>> masks;
    std::vector<double> logprobs;
    CircuitArch arch;
    double loss = 0.0;
    double reward = 0.0;
    std::vector<double> theta;
};

struct CacheEntry {
    CircuitArch arch;
    double loss = 0.0;
    std::vector<double> theta;
};

/// canonical_key -> score. Concurrent readers, exclusive writers.
class RewardCache {
  public:
    std::optional<CacheEntry> find(const std::string &key) const;
    /// Keeps the existing entry if the key is already present.
    void insert(const std::string &key, CacheEntry entry);
    std::size_t size() const;
    /// Snapshot ordered by key.
    std::vector<std::pair<std::string, CacheEntry>> entries() const;

  private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, CacheEntry> map_;
};

struct BestCircuit {
    CircuitArch arch;
    std::vector<double> theta;
    double loss = std::numeric_limits<double>::infinity();
};

/// Online trajectory-balance training of the transformer sampler on a task.
class Trainer {
  public:
    Trainer(const Task &task, ActionSpace space, TrainConfig config);
    /// Resumes from a checkpoint whose policy matches the action space.
    Trainer(const Task &task, ActionSpace space, TrainConfig config, Checkpoint resume);

    /// Collects one batch, scores it, and takes a gradient step when
    /// update_every trajectories have accumulated. Returns the epoch's row.
    MetricsRow run_epoch();
    /// Runs until `epochs` epochs or the evaluation limit; the callback sees
    /// every row as it is produced.
    std::vector<MetricsRow> train(const std::function<void(const MetricsRow &)> &on_epoch = {});

    const TransformerPolicy &policy() const { return policy_; }
    TransformerPolicy &policy() { return policy_; }
    const ActionSpace &space() const { return space_; }
    const TrainConfig &config() const { return config_; }
    const RewardCache &cache() const { return cache_; }
    const BestCircuit &best() const { return best_; }
    const std::vector<MetricsRow> &history() const { return history_; }
    const std::vector<TrajectoryRecord> &last_batch() const { return last_batch_; }
    std::int64_t quantum_evals() const { return quantum_evals_; }
    int epoch() const { return epoch_; }
    double baseline() const { return baseline_.value(); }
    bool evaluation_budget_exhausted() const;

    Checkpoint checkpoint() const;
    /// Metadata describing the action space and budgets, stored in checkpoints.
    nlohmann::json space_meta() const;

  private:
    TrajectoryRecord sample_one(int index, int attempt);
    void score_batch(std::vector<TrajectoryRecord> &batch);
    double gradient_step(const std::vector<TrajectoryRecord> &batch);
    /// Dumps a checkpoint (when configured) and throws std::runtime_error.
    [[noreturn]] void abort_training(const std::string &reason) const;

    const Task &task_;
    ActionSpace space_;
    TrainConfig config_;
    TransformerPolicy policy_;
    AdamState adam_;
    AdamState adam_log_z_;
    Baseline baseline_;
    RewardCache cache_;
    BestCircuit best_;
    std::vector<MetricsRow> history_;
    std::vector<TrajectoryRecord> last_batch_;
    std::vector<TrajectoryRecord> pending_;
    std::int64_t quantum_evals_ = 0;
    int epoch_ = 0;
};

} // namespace flowq
