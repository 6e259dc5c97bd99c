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
#include <string>
#include <vector>

#include "flowq/common/rng.hpp"
#include "flowq/qsim/circuit.hpp"

namespace flowq {

/// Result of scoring one architecture: the task loss at the best parameters
/// found, those parameters, and how many circuit simulations it took.
struct TaskEvaluation {
    double loss = 0.0;
    std::vector<double> theta;
    std::int64_t quantum_evals = 0;
};

/**
 * A search objective for the sampler. Lower loss is better. Implementations
 * must be safe to call concurrently from several threads as long as each call
 * owns its Rng.
 */
class Task {
  public:
    virtual ~Task() = default;

    virtual std::string name() const = 0;
    virtual int n_qubits() const = 0;
    virtual TaskEvaluation evaluate(const CircuitArch &arch, Rng &rng) const = 0;
    /// Offset b used by the fixed baseline mode.
    virtual double default_baseline() const { return 0.0; }
};

} // namespace flowq
