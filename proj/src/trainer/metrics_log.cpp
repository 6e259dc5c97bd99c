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

#include "flowq/trainer/metrics_log.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace flowq {

namespace {

constexpr const char *kHeader = "epoch,mean_reward,best_loss,tb_loss,unique_circuits,quantum_evals";

} // namespace

void write_metrics_csv(std::ostream &out, const std::vector<MetricsRow> &rows)
{
    out << kHeader << '\n' << std::setprecision(17);
    for (const auto &r : rows) {
        out << r.epoch << ',' << r.mean_reward << ',' << r.best_loss << ',' << r.tb_loss << ','
            << r.unique_circuits << ',' << r.quantum_evals << '\n';
    }
}

void save_metrics_csv(const std::string &path, const std::vector<MetricsRow> &rows)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_metrics_csv(out, rows);
}

std::vector<MetricsRow> parse_metrics_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line.substr(0, line.find_last_not_of("\r") + 1) != kHeader) {
        throw std::runtime_error("metrics csv: expected header '" + std::string(kHeader) + "'");
    }
    std::vector<MetricsRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream ls(line);
        MetricsRow r;
        char c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
        if (!(ls >> r.epoch >> c1 >> r.mean_reward >> c2 >> r.best_loss >> c3 >> r.tb_loss >> c4 >>
              r.unique_circuits >> c5 >> r.quantum_evals) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
            throw std::runtime_error("metrics csv line " + std::to_string(line_no) + " is malformed");
        }
        rows.push_back(r);
    }
    return rows;
}

std::vector<MetricsRow> load_metrics_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return parse_metrics_csv(in);
}

std::vector<double> running_mean(const std::vector<double> &values, int window)
{
    if (window < 1) {
        throw std::invalid_argument("running_mean: window must be >= 1");
    }
    std::vector<double> out(values.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += values[i];
        if (i >= static_cast<std::size_t>(window)) {
            sum -= values[i - static_cast<std::size_t>(window)];
        }
        const std::size_t n = std::min(i + 1, static_cast<std::size_t>(window));
        out[i] = sum / static_cast<double>(n);
    }
    return out;
}

void write_plot_data(std::ostream &out, const std::vector<MetricsRow> &rows, int window)
{
    std::vector<double> reward;
    std::vector<double> tb;
    for (const auto &r : rows) {
        reward.push_back(r.mean_reward);
        tb.push_back(r.tb_loss);
    }
    const auto reward_smooth = running_mean(reward, window);
    const auto tb_smooth = running_mean(tb, window);
    out << "epoch,mean_reward,mean_reward_smooth,tb_loss,tb_loss_smooth,best_loss,"
           "unique_circuits,quantum_evals\n"
        << std::setprecision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        out << r.epoch << ',' << r.mean_reward << ',' << reward_smooth[i] << ',' << r.tb_loss
            << ',' << tb_smooth[i] << ',' << r.best_loss << ',' << r.unique_circuits << ','
            << r.quantum_evals << '\n';
    }
}

} // namespace flowq
