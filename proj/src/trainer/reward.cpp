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

#include "flowq/trainer/reward.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace flowq {

double log_reward_from_loss(double loss, double beta, double baseline)
{
    if (!std::isfinite(loss) || !std::isfinite(baseline)) {
        throw std::invalid_argument("reward: loss and baseline must be finite");
    }
    if (!(beta > 0.0)) {
        throw std::invalid_argument("reward: beta must be positive");
    }
    const double exponent = -beta * (loss - baseline);
    if (std::abs(exponent) > kRewardExponentClamp) {
        static std::atomic<int> reported{0};
        if (reported.fetch_add(1) < 10) {
            spdlog::warn("reward exponent {:.3g} clamped to +-{}", exponent, kRewardExponentClamp);
        }
        return std::clamp(exponent, -kRewardExponentClamp, kRewardExponentClamp);
    }
    return exponent;
}

double reward_from_loss(double loss, double beta, double baseline)
{
    return std::exp(log_reward_from_loss(loss, beta, baseline));
}

} // namespace flowq
