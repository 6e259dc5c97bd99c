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
#include <iosfwd>
#include <string>
#include <vector>

namespace flowq {

struct MetricsRow {
    int epoch = 0;
    double mean_reward = 0.0;
    double best_loss = 0.0;
    double tb_loss = 0.0;
    std::int64_t unique_circuits = 0;
    std::int64_t quantum_evals = 0;

    bool operator==(const MetricsRow &) const = default;
};

/// Header: epoch,mean_reward,best_loss,tb_loss,unique_circuits,quantum_evals.
/// Reals are written with 17 significant digits so a round trip is exact.
void write_metrics_csv(std::ostream &out, const std::vector<MetricsRow> &rows);
void save_metrics_csv(const std::string &path, const std::vector<MetricsRow> &rows);
/// Throws std::runtime_error on a wrong header or malformed line.
std::vector<MetricsRow> parse_metrics_csv(std::istream &in);
std::vector<MetricsRow> load_metrics_csv(const std::string &path);

/// Trailing running mean: entry i averages values[max(0, i-window+1) .. i].
std::vector<double> running_mean(const std::vector<double> &values, int window);

/// Plot-ready table: epoch, mean_reward, mean_reward_smooth, tb_loss,
/// tb_loss_smooth, best_loss, unique_circuits, quantum_evals.
void write_plot_data(std::ostream &out, const std::vector<MetricsRow> &rows, int window = 50);

} // namespace flowq
