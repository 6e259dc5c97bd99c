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

#include "flowq/rewards/maxcut.hpp"

namespace flowq {

/**
 * QAOA ansatz compiled to the native gate set: RY(pi/2) on every qubit, then
 * per layer l a cost block CNOT(u,v) RZ(-gamma_l) CNOT(u,v) for every edge
 * and a mixer RX(2 beta_l) on every qubit.
 *
 * The circuit parameters are tied to the 2p angles
 * phi = (gamma_1, beta_1, ..., gamma_p, beta_p) through
 * theta_j = scale_j * phi[source_j] + offset_j (source_j = -1 for the fixed
 * initial layer).
 */
struct QaoaCircuit {
    CircuitArch arch;
    int layers = 0;
    std::vector<int> source;
    std::vector<double> scale;
    std::vector<double> offset;

    int n_angles() const { return 2 * layers; }
    std::vector<double> expand(const std::vector<double> &phi) const;
};

QaoaCircuit build_qaoa(const Graph &graph, int layers);

struct QaoaResult {
    std::vector<double> phi;
    std::vector<double> theta;
    double expectation = 0.0;
    CutMetrics metrics;
    std::int64_t quantum_evals = 0;
};

/// Maximizes <O_c> over the 2p angles with the Adam inner loop (chain rule
/// over the tied circuit parameters) and reports the cut metrics.
QaoaResult qaoa_baseline(const Graph &graph, int layers, const InnerLoopConfig &inner, Rng &rng,
                         int optimum, double cvar_alpha = 1.0);

} // namespace flowq
