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

#include <vector>

namespace flowq {

/// Per-trajectory ingredients of the trajectory-balance objective. The
/// backward policy is uniform over a single parent, so its terms vanish.
struct TbTerm {
    double sum_log_pf = 0.0;
    double log_reward = 0.0;
};

/// mean_i (log Z + sum log P_F - log R)^2. Throws std::invalid_argument for an
/// empty batch or a non-finite log-reward.
double tb_loss(const std::vector<TbTerm> &batch, double log_z);

/// Residual log Z + sum log P_F - log R of one trajectory.
inline double tb_residual(const TbTerm &t, double log_z)
{
    return log_z + t.sum_log_pf - t.log_reward;
}

/// Convenience for batches given as rewards: log R is taken from R > 0.
/// Throws std::invalid_argument for a non-positive reward.
double tb_loss_from_rewards(const std::vector<double> &sum_log_pf,
                            const std::vector<double> &rewards, double log_z);

} // namespace flowq
