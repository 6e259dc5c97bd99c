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

#include <string>
#include <vector>

#include "flowq/mdp/action_space.hpp"
#include "flowq/qsim/circuit.hpp"

namespace flowq {

/// Construction budgets. Reaching `max_gates` masks every placement, reaching
/// `max_params` masks every rotation; Stop then carries probability one.
struct Budgets {
    int max_gates = 40;
    int max_params = 20;

    void validate() const;
};

/// A partial circuit plus the termination flag. States are identified by
/// their ordered gate list, so the construction graph is a tree.
struct MdpState {
    CircuitArch arch;
    bool stopped = false;

    static MdpState initial(int n_qubits) { return {CircuitArch(n_qubits), false}; }

    int gate_count() const { return static_cast<int>(arch.size()); }
    bool is_initial() const { return arch.empty() && !stopped; }
    bool operator==(const MdpState &) const = default;
};

/**
 * Valid-action mask. A placement is legal iff
 *  1. it is not an exact (kind, qubit tuple) repeat of the most recent gate on
 *     any qubit it touches;
 *  2. a rotation does not follow a rotation on the same qubit;
 *  3. a CNOT has at least one earlier gate on its control or target;
 *  4. a CNOT(c,t) does not directly follow CNOT(t,c) in the gate list;
 * and the gate/rotation budgets are not exhausted. Stop is legal on every
 * non-empty circuit. Throws std::logic_error for a stopped state.
 */
std::vector<bool> mask(const ActionSpace &space, const MdpState &state, const Budgets &budgets);

/// Applies action `index`; the input is left untouched. Rotations take the
/// next parameter index. Throws std::invalid_argument naming the violated
/// constraint when the action is masked or the state is already stopped.
MdpState step(const ActionSpace &space, const MdpState &state, std::size_t index,
              const Budgets &budgets);

/// Number of parents in the construction tree: 0 for the initial state and 1
/// otherwise, so a uniform backward policy has log-probability 0 everywhere.
int parent_count(const MdpState &state);

/// Policy input: [BOS, token(g_0), token(g_1), ...] with token ids taken from
/// the action-space ordering.
std::vector<int> encode(const ActionSpace &space, const MdpState &state);
std::vector<int> encode(const ActionSpace &space, const CircuitArch &arch);

/// Injective text serialization of the ordered gate list, e.g.
/// "n4|RY0|CNOT0,1|RX2".
std::string canonical_key(const CircuitArch &arch);

/// Replays action indices from the initial state.
MdpState replay(const ActionSpace &space, const std::vector<int> &actions, const Budgets &budgets);

} // namespace flowq
