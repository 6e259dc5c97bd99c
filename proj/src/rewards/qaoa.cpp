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

#include "flowq/rewards/qaoa.hpp"

#include <numbers>
#include <stdexcept>

namespace flowq {

std::vector<double> QaoaCircuit::expand(const std::vector<double> &phi) const
{
    if (static_cast<int>(phi.size()) != n_angles()) {
        throw std::invalid_argument("QaoaCircuit: expected " + std::to_string(n_angles()) +
                                    " angles");
    }
    std::vector<double> theta(source.size());
    for (std::size_t j = 0; j < source.size(); ++j) {
        theta[j] = offset[j];
        if (source[j] >= 0) {
            theta[j] += scale[j] * phi[static_cast<std::size_t>(source[j])];
        }
    }
    return theta;
}

QaoaCircuit build_qaoa(const Graph &graph, int layers)
{
    if (layers < 1) {
        throw std::invalid_argument("build_qaoa: need at least one layer");
    }
    QaoaCircuit q;
    q.arch = CircuitArch(graph.n_vertices());
    q.layers = layers;
    auto add = [&](GateKind kind, int qubit, int src, double scale, double offset) {
        q.arch.append_rotation(kind, qubit);
        q.source.push_back(src);
        q.scale.push_back(scale);
        q.offset.push_back(offset);
    };
    for (int v = 0; v < graph.n_vertices(); ++v) {
        add(GateKind::RY, v, -1, 0.0, std::numbers::pi / 2);
    }
    for (int l = 0; l < layers; ++l) {
        for (const auto &[u, v] : graph.edges()) {
            q.arch.append_cnot(u, v);
            add(GateKind::RZ, v, 2 * l, -1.0, 0.0);
            q.arch.append_cnot(u, v);
        }
        for (int v = 0; v < graph.n_vertices(); ++v) {
            add(GateKind::RX, v, 2 * l + 1, 2.0, 0.0);
        }
    }
    return q;
}

QaoaResult qaoa_baseline(const Graph &graph, int layers, const InnerLoopConfig &inner, Rng &rng,
                         int optimum, double cvar_alpha)
{
    const QaoaCircuit q = build_qaoa(graph, layers);
    const Observable obs = maxcut_observable(graph);
    const StateVector zero = StateVector::zero(graph.n_vertices());
    QaoaResult result;

    const Objective objective = [&](std::span<const double> phi, std::span<double> grad) {
        std::vector<double> theta = q.expand({phi.begin(), phi.end()});
        const double value = -expectation(run_statevector(q.arch, theta, zero), obs);
        ++result.quantum_evals;
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t j = 0; j < theta.size(); ++j) {
            if (q.source[j] < 0) {
                continue;
            }
            const double keep = theta[j];
            theta[j] = keep + std::numbers::pi / 2;
            const double plus = expectation(run_statevector(q.arch, theta, zero), obs);
            theta[j] = keep - std::numbers::pi / 2;
            const double minus = expectation(run_statevector(q.arch, theta, zero), obs);
            theta[j] = keep;
            result.quantum_evals += 2;
            grad[static_cast<std::size_t>(q.source[j])] -= q.scale[j] * 0.5 * (plus - minus);
        }
        return value;
    };
    InnerLoopResult best = minimize(q.n_angles(), objective, inner, rng);
    result.phi = best.theta;
    result.theta = q.expand(result.phi);
    result.expectation = -best.value;
    result.metrics = cut_metrics(q.arch, result.theta, graph, optimum, cvar_alpha);
    return result;
}

} // namespace flowq
