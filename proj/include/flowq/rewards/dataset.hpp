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

#include <iosfwd>
#include <string>
#include <vector>

#include "flowq/common/rng.hpp"

namespace flowq {

/// Feature vectors with binary labels; every row has the same dimension.
struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
    int dim() const { return features.empty() ? 0 : static_cast<int>(features.front().size()); }
    /// Throws std::invalid_argument on ragged rows, non-finite features or
    /// labels outside {0, 1}.
    void validate() const;
};

struct DatasetSplit {
    Dataset train;
    Dataset test;
};

/**
 * Two Gaussian blobs in [0, pi]^m, half of the samples per class. Feature 0
 * is centred at pi/2 -/+ margin * sigma for labels 0/1; the remaining
 * features share the centre pi/4 for both classes. For margin >= 1 samples
 * whose feature 0 lies within margin * sigma / 2 of pi/2 (or on the wrong
 * side) are redrawn, which makes the classes linearly separable along
 * feature 0.
 */
Dataset synth_dataset(Rng &rng, int dim, int n_samples, double margin, double sigma = 0.25);

/// Shuffles and splits; the test part gets round(test_fraction * N) rows.
DatasetSplit split_dataset(const Dataset &data, double test_fraction, Rng &rng);

/// CSV rows `f1,...,fm,label`. A first line that does not parse as numbers is
/// treated as a header. Throws std::runtime_error with the line number.
Dataset parse_dataset_csv(std::istream &in);
Dataset load_dataset(const std::string &path);
void write_dataset_csv(std::ostream &out, const Dataset &data);

} // namespace flowq
