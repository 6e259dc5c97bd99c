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

#include <string>
#include <string_view>
#include <vector>

#include "flowq/rewards/dataset.hpp"
#include "flowq/rewards/inner_loop.hpp"
#include "flowq/rewards/task.hpp"
#include "flowq/qsim/statevector.hpp"

namespace flowq {

/// angle: m qubits, RY(x_j) on qubit j.
/// dense: m/2 qubits, RX(x_j) then RY(x_{j+m/2}) on qubit j.
enum class Encoding { Angle, Dense };

Encoding encoding_from_name(std::string_view name);
std::string_view encoding_name(Encoding e);
/// Qubits needed for m features; throws for dense encoding with odd m.
int encoding_qubits(Encoding e, int n_features);

StateVector encode_features(const std::vector<double> &x, Encoding e);

/// Parity readout: probability mass on odd-parity basis states, i.e. class 1.
double parity_p1(const StateVector &state);

inline constexpr double kProbabilityFloor = 1e-12;

struct ClassifyResult {
    double cross_entropy = 0.0;
    double accuracy = 0.0;
};

/// Mean binary cross-entropy -[y log P(1) + (1-y) log P(0)] with probabilities
/// floored at 1e-12, and accuracy with the 0.5 threshold on P(1).
ClassifyResult classify_loss(const CircuitArch &arch, const std::vector<double> &theta,
                             const Dataset &data, Encoding encoding);

/// Cross-entropy and its parameter-shift gradient on `data`; adds the number
/// of circuit simulations to `evals`.
double classify_loss_grad(const CircuitArch &arch, std::span<const double> theta,
                          const Dataset &data, Encoding encoding, std::span<double> grad,
                          std::int64_t &evals);

/// Search-time defaults for classification: 2 restarts of 100 Adam steps.
InnerLoopConfig classify_search_inner();

/// Binary classification search. The loss is the training-set cross-entropy
/// after the inner loop; `final_inner` is used for the reported model.
class ClassifyTask : public Task {
  public:
    ClassifyTask(DatasetSplit data, Encoding encoding,
                 InnerLoopConfig search_inner = classify_search_inner(),
                 InnerLoopConfig final_inner = {});

    std::string name() const override { return "classify"; }
    int n_qubits() const override { return n_qubits_; }
    TaskEvaluation evaluate(const CircuitArch &arch, Rng &rng) const override;

    /// Re-trains `arch` with the final inner budget (warm-started from
    /// `theta` when provided) and returns the parameters.
    TaskEvaluation train_final(const CircuitArch &arch, Rng &rng,
                               const std::optional<std::vector<double>> &theta = {}) const;

    const DatasetSplit &data() const { return data_; }
    Encoding encoding() const { return encoding_; }

  private:
    TaskEvaluation fit(const CircuitArch &arch, Rng &rng, const InnerLoopConfig &inner,
                       const std::optional<std::vector<double>> &warm) const;

    DatasetSplit data_;
    Encoding encoding_;
    InnerLoopConfig search_inner_;
    InnerLoopConfig final_inner_;
    int n_qubits_ = 0;
};

} // namespace flowq
