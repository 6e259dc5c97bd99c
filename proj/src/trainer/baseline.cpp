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

#include "flowq/trainer/baseline.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace flowq {

BaselineMode baseline_mode_from_name(std::string_view name)
{
    if (name == "fixed") {
        return BaselineMode::Fixed;
    }
    if (name == "adaptive_min") {
        return BaselineMode::AdaptiveMin;
    }
    throw std::invalid_argument("unknown baseline mode '" + std::string(name) +
                                "' (expected fixed or adaptive_min)");
}

std::string_view baseline_mode_name(BaselineMode mode)
{
    return mode == BaselineMode::Fixed ? "fixed" : "adaptive_min";
}

Baseline::Baseline(BaselineMode mode, double fixed_value, int warmup_epochs)
    : mode_(mode), fixed_(fixed_value), warmup_(warmup_epochs)
{
    if (warmup_epochs < 0) {
        throw std::invalid_argument("baseline: warmup must be non-negative");
    }
}

double Baseline::value() const
{
    if (mode_ == BaselineMode::AdaptiveMin && min_seen_) {
        return *min_seen_;
    }
    return fixed_;
}

void Baseline::observe(double loss, int epoch)
{
    if (mode_ != BaselineMode::AdaptiveMin || frozen(epoch)) {
        return;
    }
    min_seen_ = min_seen_ ? std::min(*min_seen_, loss) : loss;
}

} // namespace flowq
