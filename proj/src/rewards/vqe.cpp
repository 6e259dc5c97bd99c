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

#include "flowq/rewards/vqe.hpp"

#include <stdexcept>

namespace flowq {

VqeResult vqe_loss(const CircuitArch &arch, const Observable &obs, const StateVector &initial,
                   const InnerLoopConfig &inner, Rng &rng, const Backend &backend,
                   const std::optional<std::vector<double>> &warm_start)
{
    if (arch.n_qubits() != obs.n_qubits()) {
        throw std::invalid_argument("vqe_loss: circuit and observable qubit counts differ");
    }
    VqeResult result;
    const Objective objective = [&](std::span<const double> theta, std::span<double> grad) {
        const double value = circuit_expectation(arch, theta, obs, initial, backend);
        ++result.quantum_evals;
        if (!grad.empty()) {
            const auto g = param_shift_grad(arch, theta, obs, initial, backend);
            std::copy(g.begin(), g.end(), grad.begin());
            result.quantum_evals += 2 * static_cast<std::int64_t>(g.size());
        }
        return value;
    };
    InnerLoopResult best = minimize(arch.n_params(), objective, inner, rng, warm_start);
    result.theta = std::move(best.theta);
    result.energy = best.value;
    return result;
}

VqeTask::VqeTask(Observable obs, std::string reference_bits, InnerLoopConfig inner,
                 Backend backend)
    : obs_(std::move(obs)), inner_(inner), backend_(std::move(backend))
{
    inner_.validate();
    if (backend_.noise) {
        backend_.noise->validate();
    }
    initial_ = reference_bits.empty() ? StateVector::zero(obs_.n_qubits())
                                      : StateVector::from_bits(reference_bits);
    if (initial_.n_qubits() != obs_.n_qubits()) {
        throw std::invalid_argument("VqeTask: reference state has the wrong qubit count");
    }
    reference_energy_ = expectation(initial_, obs_);
}

TaskEvaluation VqeTask::evaluate(const CircuitArch &arch, Rng &rng) const
{
    VqeResult r = vqe_loss(arch, obs_, initial_, inner_, rng, backend_);
    return {r.energy, std::move(r.theta), r.quantum_evals};
}

} // namespace flowq
