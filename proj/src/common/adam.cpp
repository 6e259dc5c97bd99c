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

#include "flowq/common/adam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flowq {

void AdamState::reset()
{
    std::fill(m.begin(), m.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    step = 0;
}

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState &state, double lr)
{
    if (params.size() != grads.size() || params.size() != state.size()) {
        throw std::invalid_argument("adam_step: shape mismatch between parameters (" +
                                    std::to_string(params.size()) + "), gradients (" +
                                    std::to_string(grads.size()) + ") and moments (" +
                                    std::to_string(state.size()) + ")");
    }
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(state.beta1, t);
    const double c2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

} // namespace flowq
