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

#include "flowq/oracle/enumerate.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace flowq {

double toy_loss(const CircuitArch &arch, int target_gates)
{
    return std::abs(static_cast<double>(arch.size()) - target_gates);
}

double toy_reward(const CircuitArch &arch, int target_gates)
{
    return std::exp(-toy_loss(arch, target_gates));
}

namespace {

void visit(const ActionSpace &space, const Budgets &budgets, const ArchReward &reward,
           std::size_t max_terminals, const MdpState &state, std::vector<Terminal> &out)
{
    const std::vector<bool> valid = mask(space, state, budgets);
    for (std::size_t a = 0; a < valid.size(); ++a) {
        if (!valid[a]) {
            continue;
        }
        if (a == space.stop_index()) {
            if (out.size() >= max_terminals) {
                throw std::runtime_error("enumerate_terminals: more than " +
                                         std::to_string(max_terminals) + " terminals");
            }
            out.push_back({state.arch, canonical_key(state.arch), reward(state.arch)});
        } else {
            visit(space, budgets, reward, max_terminals, step(space, state, a, budgets), out);
        }
    }
}

} // namespace

std::vector<Terminal> enumerate_terminals(const ActionSpace &space, const Budgets &budgets,
                                          const ArchReward &reward, std::size_t max_terminals)
{
    std::vector<Terminal> out;
    visit(space, budgets, reward, max_terminals, MdpState::initial(space.n_qubits()), out);
    return out;
}

double partition_function(const std::vector<Terminal> &terminals)
{
    double z = 0.0;
    for (const auto &t : terminals) {
        z += t.reward;
    }
    return z;
}

} // namespace flowq
