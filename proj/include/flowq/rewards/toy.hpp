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

#include "flowq/oracle/enumerate.hpp"
#include "flowq/rewards/task.hpp"

namespace flowq {

/// Closed-form task with loss |G - target_gates| and no circuit simulation.
/// Its reward landscape can be enumerated exactly, which makes it the
/// reference instance for distribution checks.
class ToyTask : public Task {
  public:
    ToyTask(int n_qubits, int target_gates = 3) : n_qubits_(n_qubits), target_(target_gates) {}

    std::string name() const override { return "toy"; }
    int n_qubits() const override { return n_qubits_; }
    TaskEvaluation evaluate(const CircuitArch &arch, Rng &) const override
    {
        return {toy_loss(arch, target_), {}, 0};
    }
    int target_gates() const { return target_; }

  private:
    int n_qubits_;
    int target_;
};

} // namespace flowq
