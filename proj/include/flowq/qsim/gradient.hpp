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
#include <span>
#include <vector>

#include "flowq/qsim/density.hpp"
#include "flowq/qsim/statevector.hpp"

namespace flowq {

/// Simulation backend selector: exact pure-state evolution, or the density
/// backend with depolarizing noise.
struct Backend {
    std::optional<NoiseSpec> noise;

    static Backend pure() { return {}; }
    static Backend depolarizing(double p) { return {NoiseSpec{p}}; }
    bool noisy() const { return noise.has_value(); }
};

/// <H> after running `arch` on `initial` with the chosen backend.
double circuit_expectation(const CircuitArch &arch, std::span<const double> theta,
                           const Observable &obs, const StateVector &initial,
                           const Backend &backend = Backend::pure());

/// Parameter-shift gradient: component j is [E(theta_j + pi/2) - E(theta_j - pi/2)] / 2.
/// Exact because every parameter drives exactly one exp(-i theta sigma / 2)
/// rotation. Costs 2 * n_params circuit evaluations.
std::vector<double> param_shift_grad(const CircuitArch &arch, std::span<const double> theta,
                                     const Observable &obs, const StateVector &initial,
                                     const Backend &backend = Backend::pure());

} // namespace flowq
