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

#include "flowq/mdp/metrics.hpp"

#include <algorithm>
#include <vector>

namespace flowq {

CircuitMetrics metrics(const CircuitArch &arch)
{
    CircuitMetrics m;
    std::vector<int> layer(static_cast<std::size_t>(arch.n_qubits()), 0);
    for (const auto &g : arch.gates()) {
        ++m.G;
        if (g.is_rotation()) {
            ++m.P;
            auto &l = layer[static_cast<std::size_t>(g.qubit0)];
            l += 1;
            m.D = std::max(m.D, l);
        } else {
            ++m.C;
            auto &a = layer[static_cast<std::size_t>(g.qubit0)];
            auto &b = layer[static_cast<std::size_t>(g.qubit1)];
            const int l = std::max(a, b) + 1;
            a = b = l;
            m.D = std::max(m.D, l);
        }
    }
    return m;
}

} // namespace flowq
