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

#include "flowq/qsim/gradient.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace flowq {

double circuit_expectation(const CircuitArch &arch, std::span<const double> theta,
                           const Observable &obs, const StateVector &initial,
                           const Backend &backend)
{
    if (backend.noisy()) {
        return expectation_density(run_density(arch, theta, *backend.noise, initial), obs);
    }
    return expectation(run_statevector(arch, theta, initial), obs);
}

std::vector<double> param_shift_grad(const CircuitArch &arch, std::span<const double> theta,
                                     const Observable &obs, const StateVector &initial,
                                     const Backend &backend)
{
    if (static_cast<int>(theta.size()) != arch.n_params()) {
        throw std::invalid_argument("param_shift_grad: theta has " +
                                    std::to_string(theta.size()) + " entries, circuit has " +
                                    std::to_string(arch.n_params()) + " parameters");
    }
    constexpr double shift = std::numbers::pi / 2;
    std::vector<double> shifted(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        shifted[j] = theta[j] + shift;
        const double plus = circuit_expectation(arch, shifted, obs, initial, backend);
        shifted[j] = theta[j] - shift;
        const double minus = circuit_expectation(arch, shifted, obs, initial, backend);
        shifted[j] = theta[j];
        grad[j] = 0.5 * (plus - minus);
    }
    return grad;
}

} // namespace flowq
