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

#include "flowq/rewards/maxcut.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "flowq/rewards/vqe.hpp"

namespace flowq {

Observable maxcut_observable(const Graph &graph)
{
    const int n = graph.n_vertices();
    Observable obs(n);
    obs.add_term(0.5 * static_cast<double>(graph.n_edges()), PauliString(n));
    for (const auto &[u, v] : graph.edges()) {
        PauliString zz(n);
        zz.set(u, Pauli::Z);
        zz.set(v, Pauli::Z);
        obs.add_term(-0.5, zz);
    }
    return obs;
}

CutMetrics cut_metrics(const StateVector &state, const Graph &graph, int optimum,
                       double cvar_alpha)
{
    if (optimum <= 0) {
        throw std::invalid_argument("cut_metrics: optimum must be positive");
    }
    if (!(cvar_alpha > 0.0 && cvar_alpha <= 1.0)) {
        throw std::invalid_argument("cut_metrics: cvar alpha must be in (0,1]");
    }
    if (state.n_qubits() != graph.n_vertices()) {
        throw std::invalid_argument("cut_metrics: state and graph sizes differ");
    }
    const std::vector<double> probs = measure_probs(state);
    std::vector<int> cuts(probs.size());
    double mean = 0.0;
    int best = 0;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        cuts[b] = graph.cut_value(b);
        mean += probs[b] * cuts[b];
        if (probs[b] >= kSampleProbabilityFloor) {
            best = std::max(best, cuts[b]);
        }
    }

    std::vector<std::size_t> order(probs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cuts[a] > cuts[b]; });
    double mass = 0.0;
    double acc = 0.0;
    for (std::size_t b : order) {
        const double take = std::min(probs[b], cvar_alpha - mass);
        if (take <= 0.0) {
            break;
        }
        acc += take * cuts[b];
        mass += take;
    }
    CutMetrics m;
    m.cvar = mass > 0.0 ? acc / mass : 0.0;
    if (cvar_alpha == 1.0) {
        m.cvar = mean;
    }
    const double opt = static_cast<double>(optimum);
    m.expectation_ratio = mean / opt;
    m.best_sampled_ratio = best / opt;
    m.cvar_ratio = m.cvar / opt;
    return m;
}

CutMetrics cut_metrics(const CircuitArch &arch, const std::vector<double> &theta,
                       const Graph &graph, int optimum, double cvar_alpha)
{
    return cut_metrics(run_statevector(arch, theta), graph, optimum, cvar_alpha);
}

MaxCutTask::MaxCutTask(Graph graph, InnerLoopConfig inner, double cvar_alpha, Backend backend)
    : graph_(std::move(graph)), inner_(inner), cvar_alpha_(cvar_alpha), backend_(std::move(backend))
{
    if (graph_.n_edges() == 0) {
        throw std::invalid_argument("MaxCutTask: graph has no edges");
    }
    if (!(cvar_alpha > 0.0 && cvar_alpha <= 1.0)) {
        throw std::invalid_argument("MaxCutTask: cvar alpha must be in (0,1]");
    }
    inner_.validate();
    obs_ = maxcut_observable(graph_);
    // Minimizing -O_c/|E| is the same as minimizing 1 - <O_c>/|E|.
    const double scale = 1.0 / static_cast<double>(graph_.n_edges());
    loss_obs_ = Observable(obs_.n_qubits());
    for (const auto &t : obs_.terms()) {
        loss_obs_.add_term(-scale * t.coeff, t.string);
    }
}

TaskEvaluation MaxCutTask::evaluate(const CircuitArch &arch, Rng &rng) const
{
    VqeResult r = vqe_loss(arch, loss_obs_, StateVector::zero(n_qubits()), inner_, rng, backend_);
    return {1.0 + r.energy, std::move(r.theta), r.quantum_evals};
}

} // namespace flowq
