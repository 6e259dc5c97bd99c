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

#include "flowq/rewards/inner_loop.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "flowq/common/adam.hpp"

namespace flowq {

void InnerLoopConfig::validate() const
{
    if (restarts < 1 || max_steps < 0 || !(lr > 0.0) || grad_tol < 0.0) {
        throw std::invalid_argument(
            "inner loop: restarts >= 1, max_steps >= 0, lr > 0 and grad_tol >= 0 required");
    }
}

InnerLoopResult minimize(int n_params, const Objective &objective, const InnerLoopConfig &config,
                         Rng &rng, const std::optional<std::vector<double>> &warm_start)
{
    config.validate();
    if (warm_start && static_cast<int>(warm_start->size()) != n_params) {
        throw std::invalid_argument("minimize: warm start has the wrong length");
    }
    const auto n = static_cast<std::size_t>(n_params);
    InnerLoopResult best;
    best.value = std::numeric_limits<double>::infinity();
    std::vector<double> grad(n);
    if (n_params == 0) {
        best.value = objective({}, grad);
        return best;
    }

    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int r = 0; r < config.restarts; ++r) {
        std::vector<double> theta(n);
        if (r == 0 && warm_start) {
            theta = *warm_start;
        } else {
            for (auto &t : theta) {
                t = angle(rng);
            }
        }
        AdamState adam(n);
        for (int s = 0;; ++s) {
            const double value = objective(theta, grad);
            if (!std::isfinite(value)) {
                throw std::runtime_error("minimize: objective returned a non-finite value");
            }
            if (value < best.value) {
                best.value = value;
                best.theta = theta;
                best.steps = s;
            }
            double norm2 = 0.0;
            for (double g : grad) {
                norm2 += g * g;
            }
            if (s >= config.max_steps || std::sqrt(norm2) < config.grad_tol) {
                break;
            }
            adam_step(theta, grad, adam, config.lr);
        }
    }
    return best;
}

} // namespace flowq
