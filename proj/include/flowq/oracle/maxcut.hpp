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

#include "flowq/oracle/graph.hpp"

namespace flowq {

struct MaxCutSolution {
    int value = 0;
    /// Bit v set = vertex v on side 1; vertex n-1 is always on side 0.
    std::uint64_t partition = 0;
};

/// Exhaustive search over the 2^(n-1) partitions that keep the last vertex
/// on side 0. Throws std::invalid_argument above 24 vertices.
MaxCutSolution brute_force_maxcut(const Graph &graph);

} // namespace flowq
