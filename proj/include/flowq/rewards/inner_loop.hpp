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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "flowq/common/rng.hpp"

namespace flowq {

/// Classical optimizer settings for the parameter loop of one architecture.
struct InnerLoopConfig {
    int restarts = 5;
    int max_steps = 500;
    double lr = 1e-2;
    /// Early stop once the gradient 2-norm falls below this value.
    double grad_tol = 1e-6;

    void validate() const;
};

/// Returns f(theta) and writes grad f(theta) into `grad` (already sized).
using Objective = std::function<double(std::span<const double> theta, std::span<double> grad)>;

struct InnerLoopResult {
    std::vector<double> theta;
    double value = 0.0;
    int steps = 0;
};

/**
 * Adam from `restarts` starting points; the first start is `warm_start` when
 * given, the others are uniform in (-pi, pi). Returns the lowest objective
 * value observed at any iterate together with its parameters.
 */
InnerLoopResult minimize(int n_params, const Objective &objective, const InnerLoopConfig &config,
                         Rng &rng, const std::optional<std::vector<double>> &warm_start = {});

} // namespace flowq
