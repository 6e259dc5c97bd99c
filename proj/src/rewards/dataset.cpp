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

#include "flowq/rewards/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flowq {

void Dataset::validate() const
{
    if (features.size() != labels.size()) {
        throw std::invalid_argument("dataset: feature and label counts differ");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (static_cast<int>(features[i].size()) != dim()) {
            throw std::invalid_argument("dataset: row " + std::to_string(i) +
                                        " has a different dimension");
        }
        for (double f : features[i]) {
            if (!std::isfinite(f)) {
                throw std::invalid_argument("dataset: non-finite feature in row " +
                                            std::to_string(i));
            }
        }
        if (labels[i] != 0 && labels[i] != 1) {
            throw std::invalid_argument("dataset: label outside {0,1} in row " +
                                        std::to_string(i));
        }
    }
}

Dataset synth_dataset(Rng &rng, int dim, int n_samples, double margin, double sigma)
{
    if (dim < 1 || n_samples < 2 || margin < 0.0 || !(sigma > 0.0)) {
        throw std::invalid_argument("synth_dataset: need dim >= 1, n_samples >= 2, margin >= 0, "
                                    "sigma > 0");
    }
    constexpr double pi = std::numbers::pi;
    if (margin >= 1.0 && margin * sigma / 2 >= pi / 2) {
        throw std::invalid_argument("synth_dataset: margin * sigma / 2 must stay below pi/2");
    }
    std::normal_distribution<double> noise(0.0, sigma);
    Dataset data;
    for (int i = 0; i < n_samples; ++i) {
        const int label = i < n_samples / 2 ? 0 : 1;
        const double side = label == 1 ? 1.0 : -1.0;
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (;;) {
            x[0] = std::clamp(pi / 2 + side * margin * sigma + noise(rng), 0.0, pi);
            if (margin < 1.0 || side * (x[0] - pi / 2) >= margin * sigma / 2) {
                break;
            }
        }
        for (int j = 1; j < dim; ++j) {
            x[static_cast<std::size_t>(j)] = std::clamp(pi / 4 + noise(rng), 0.0, pi);
        }
        data.features.push_back(std::move(x));
        data.labels.push_back(label);
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    Dataset shuffled;
    for (std::size_t k : order) {
        shuffled.features.push_back(data.features[k]);
        shuffled.labels.push_back(data.labels[k]);
    }
    return shuffled;
}

DatasetSplit split_dataset(const Dataset &data, double test_fraction, Rng &rng)
{
    if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("split_dataset: test fraction must be in [0,1)");
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_test =
        static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(data.size())));
    DatasetSplit split;
    for (std::size_t k = 0; k < order.size(); ++k) {
        Dataset &part = k < n_test ? split.test : split.train;
        part.features.push_back(data.features[order[k]]);
        part.labels.push_back(data.labels[order[k]]);
    }
    return split;
}

namespace {

bool parse_row(const std::string &line, std::vector<double> &values)
{
    values.clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception &) {
            return false;
        }
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
            return false;
        }
        values.push_back(v);
    }
    return !values.empty();
}

} // namespace

Dataset parse_dataset_csv(std::istream &in)
{
    Dataset data;
    std::string line;
    std::vector<double> values;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (!parse_row(line, values)) {
            if (line_no == 1) {
                continue;
            }
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": expected comma-separated numbers");
        }
        if (values.size() < 2) {
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": need at least one feature and a label");
        }
        const double label = values.back();
        if (label != 0.0 && label != 1.0) {
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": label must be 0 or 1");
        }
        values.pop_back();
        if (!data.features.empty() && values.size() != data.features.front().size()) {
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": inconsistent feature count");
        }
        data.features.push_back(values);
        data.labels.push_back(static_cast<int>(label));
    }
    if (data.size() == 0) {
        throw std::runtime_error("dataset: no samples");
    }
    return data;
}

Dataset load_dataset(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset file " + path);
    }
    return parse_dataset_csv(in);
}

void write_dataset_csv(std::ostream &out, const Dataset &data)
{
    for (int j = 0; j < data.dim(); ++j) {
        out << 'f' << (j + 1) << ',';
    }
    out << "label\n" << std::setprecision(17);
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double f : data.features[i]) {
            out << f << ',';
        }
        out << data.labels[i] << '\n';
    }
}

} // namespace flowq
