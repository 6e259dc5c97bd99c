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

#include <vector>

#include "flowq/common/rng.hpp"
#include "flowq/mdp/action_space.hpp"
#include "flowq/mdp/mdp.hpp"
#include "flowq/policy/transformer.hpp"

namespace flowq {

/// With probability 1 - epsilon draws from exp(logprobs), otherwise uniformly
/// over the valid actions. Never returns a masked index; throws
/// std::invalid_argument for an all-false mask or epsilon outside [0,1].
std::size_t sample_action(const std::vector<double> &logprobs, const std::vector<bool> &mask,
                          Rng &rng, double epsilon);

/// One construction episode from s0 to a stopped state.
struct Rollout {
    std::vector<int> actions;
    std::vector<std::vector<bool>> masks;
    /// log P_F(a_t | s_t) under the policy (not the exploration mixture).
    std::vector<double> logprobs;
    MdpState terminal;

    double sum_logprob() const;
};

/// Token sequence scored by one policy pass over a trajectory: BOS followed
/// by every action except the final Stop.
std::vector<int> trajectory_tokens(const ActionSpace &space, const std::vector<int> &actions);

Rollout sample_rollout(const TransformerPolicy &policy, const ActionSpace &space,
                       const Budgets &budgets, Rng &rng, double epsilon);

/// Rollout that picks uniformly among valid actions at every step.
Rollout uniform_rollout(const ActionSpace &space, const Budgets &budgets, Rng &rng);

/// sum_t log P_F(a_t | s_t) for a recorded trajectory in one forward pass.
/// When `cache` and `dlogits` are given, `dlogits` receives
/// d(sum log P_F)/d(logits), ready for TransformerPolicy::backward.
double trajectory_logprob(const TransformerPolicy &policy, const ActionSpace &space,
                          const std::vector<int> &actions,
                          const std::vector<std::vector<bool>> &masks,
                          ForwardCache *cache = nullptr, RowMatrix *dlogits = nullptr);

} // namespace flowq
