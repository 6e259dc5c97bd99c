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

namespace flowq {

inline constexpr double kRewardExponentClamp = 50.0;

/// R = exp(-beta (L - b)) with the exponent clamped to +-50 (a warning is
/// logged when the clamp engages). Throws std::invalid_argument for a
/// non-finite loss or beta <= 0.
double reward_from_loss(double loss, double beta, double baseline);
double log_reward_from_loss(double loss, double beta, double baseline);

} // namespace flowq
