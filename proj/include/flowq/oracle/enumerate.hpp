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

#include <functional>
#include <string>
#include <vector>

#include "flowq/mdp/action_space.hpp"
#include "flowq/mdp/mdp.hpp"

namespace flowq {

struct Terminal {
    CircuitArch arch;
    std::string key;
    double reward = 0.0;
};

using ArchReward = std::function<double(const CircuitArch &)>;

/// Closed-form toy loss |G - target_gates|; the matching toy reward is
/// exp(-|G - target_gates|).
double toy_loss(const CircuitArch &arch, int target_gates = 3);
double toy_reward(const CircuitArch &arch, int target_gates = 3);

/// Depth-first enumeration of every terminal reachable from s0 under the
/// mask. Each terminal is a distinct non-empty gate list. Throws
/// std::runtime_error once more than `max_terminals` are found.
std::vector<Terminal> enumerate_terminals(const ActionSpace &space, const Budgets &budgets,
                                          const ArchReward &reward,
                                          std::size_t max_terminals = 100'000);

/// Sum of the rewards, i.e. the partition function of the instance.
double partition_function(const std::vector<Terminal> &terminals);

} // namespace flowq
