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
#include <string_view>

namespace flowq {

enum class BaselineMode { Fixed, AdaptiveMin };

BaselineMode baseline_mode_from_name(std::string_view name);
std::string_view baseline_mode_name(BaselineMode mode);

/// Reward offset b. Fixed mode returns the configured value. AdaptiveMin
/// tracks the smallest loss observed and stops updating once `warmup_epochs`
/// epochs have been observed; before the first observation it returns the
/// fixed value.
class Baseline {
  public:
    Baseline(BaselineMode mode, double fixed_value, int warmup_epochs = 50);

    double value() const;
    void observe(double loss, int epoch);
    bool frozen(int epoch) const { return mode_ == BaselineMode::AdaptiveMin && epoch >= warmup_; }
    BaselineMode mode() const { return mode_; }

  private:
    BaselineMode mode_;
    double fixed_;
    int warmup_;
    std::optional<double> min_seen_;
};

} // namespace flowq
