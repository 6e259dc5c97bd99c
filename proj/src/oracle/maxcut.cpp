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

#include "flowq/oracle/maxcut.hpp"

#include <stdexcept>

namespace flowq {

MaxCutSolution brute_force_maxcut(const Graph &graph)
{
    if (graph.n_vertices() > 24) {
        throw std::invalid_argument("brute_force_maxcut: at most 24 vertices");
    }
    MaxCutSolution best;
    const std::uint64_t count = std::uint64_t{1} << (graph.n_vertices() - 1);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        const int value = graph.cut_value(bits);
        if (value > best.value) {
            best.value = value;
            best.partition = bits;
        }
    }
    return best;
}

} // namespace flowq
