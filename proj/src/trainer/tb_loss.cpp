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

#include "flowq/trainer/tb_loss.hpp"

#include <cmath>
#include <stdexcept>

namespace flowq {

double tb_loss(const std::vector<TbTerm> &batch, double log_z)
{
    if (batch.empty()) {
        throw std::invalid_argument("tb_loss: empty batch");
    }
    double total = 0.0;
    for (const auto &t : batch) {
        if (!std::isfinite(t.log_reward)) {
            throw std::invalid_argument("tb_loss: non-finite log reward");
        }
        const double r = tb_residual(t, log_z);
        total += r * r;
    }
    return total / static_cast<double>(batch.size());
}

double tb_loss_from_rewards(const std::vector<double> &sum_log_pf,
                            const std::vector<double> &rewards, double log_z)
{
    if (sum_log_pf.size() != rewards.size()) {
        throw std::invalid_argument("tb_loss: size mismatch");
    }
    std::vector<TbTerm> batch;
    for (std::size_t i = 0; i < rewards.size(); ++i) {
        if (!(rewards[i] > 0.0)) {
            throw std::invalid_argument("tb_loss: rewards must be positive");
        }
        batch.push_back({sum_log_pf[i], std::log(rewards[i])});
    }
    return tb_loss(batch, log_z);
}

} // namespace flowq
