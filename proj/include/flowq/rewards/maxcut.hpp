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

#include "flowq/oracle/graph.hpp"
#include "flowq/qsim/gradient.hpp"
#include "flowq/rewards/inner_loop.hpp"
#include "flowq/rewards/task.hpp"

namespace flowq {

/// O_c = |E|/2 * I - 1/2 sum_{(i,j) in E} Z_i Z_j, whose value on a basis
/// state is the cut size of that partition.
Observable maxcut_observable(const Graph &graph);

struct CutMetrics {
    double expectation_ratio = 0.0;
    double best_sampled_ratio = 0.0;
    /// CVaR_alpha of the cut-value distribution divided by the optimum.
    double cvar_ratio = 0.0;
    /// Unnormalized CVaR_alpha (cut units).
    double cvar = 0.0;
};

inline constexpr double kSampleProbabilityFloor = 1e-6;

/// Ratios against `optimum` (> 0) from the full outcome distribution of
/// `state`: expectation, best cut among outcomes with probability >= 1e-6,
/// and the mean over the top-alpha probability mass ranked by cut value.
CutMetrics cut_metrics(const StateVector &state, const Graph &graph, int optimum,
                       double cvar_alpha = 1.0);
CutMetrics cut_metrics(const CircuitArch &arch, const std::vector<double> &theta,
                       const Graph &graph, int optimum, double cvar_alpha = 1.0);

/// Max-Cut search task. The loss is 1 - <O_c>/|E| so no optimum is needed
/// during training; ratios against the true optimum are evaluation-only.
class MaxCutTask : public Task {
  public:
    explicit MaxCutTask(Graph graph, InnerLoopConfig inner = {}, double cvar_alpha = 1.0,
                        Backend backend = Backend::pure());

    std::string name() const override { return "maxcut"; }
    int n_qubits() const override { return graph_.n_vertices(); }
    TaskEvaluation evaluate(const CircuitArch &arch, Rng &rng) const override;

    const Graph &graph() const { return graph_; }
    const Observable &observable() const { return obs_; }
    const InnerLoopConfig &inner() const { return inner_; }
    double cvar_alpha() const { return cvar_alpha_; }

  private:
    Graph graph_;
    Observable obs_;
    Observable loss_obs_;
    InnerLoopConfig inner_;
    double cvar_alpha_;
    Backend backend_;
};

} // namespace flowq
