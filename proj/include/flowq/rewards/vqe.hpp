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

#include <optional>
#include <string>
#include <vector>

#include "flowq/qsim/gradient.hpp"
#include "flowq/rewards/inner_loop.hpp"
#include "flowq/rewards/task.hpp"

namespace flowq {

inline constexpr double kChemicalAccuracy = 1.6e-3;

struct VqeResult {
    std::vector<double> theta;
    double energy = 0.0;
    std::int64_t quantum_evals = 0;
};

/// Minimizes <H> over the circuit parameters with Adam and parameter-shift
/// gradients. Parameter-free circuits are evaluated once.
VqeResult vqe_loss(const CircuitArch &arch, const Observable &obs, const StateVector &initial,
                   const InnerLoopConfig &inner, Rng &rng, const Backend &backend = Backend::pure(),
                   const std::optional<std::vector<double>> &warm_start = {});

/// Ground-state search on an ingested observable; the loss is the optimized
/// energy and the default baseline is the reference-state energy.
class VqeTask : public Task {
  public:
    /// `reference_bits` selects the initial basis state (char k = qubit k);
    /// empty means |0...0>.
    VqeTask(Observable obs, std::string reference_bits, InnerLoopConfig inner = {},
            Backend backend = Backend::pure());

    std::string name() const override { return "vqe"; }
    int n_qubits() const override { return obs_.n_qubits(); }
    TaskEvaluation evaluate(const CircuitArch &arch, Rng &rng) const override;
    double default_baseline() const override { return reference_energy_; }

    const Observable &observable() const { return obs_; }
    const StateVector &initial_state() const { return initial_; }
    const InnerLoopConfig &inner() const { return inner_; }
    const Backend &backend() const { return backend_; }
    double reference_energy() const { return reference_energy_; }

  private:
    Observable obs_;
    StateVector initial_;
    InnerLoopConfig inner_;
    Backend backend_;
    double reference_energy_ = 0.0;
};

} // namespace flowq
