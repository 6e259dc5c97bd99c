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

#include "flowq/mdp/action_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowq {

Connectivity Connectivity::all_to_all(int n_qubits)
{
    std::vector<std::pair<int, int>> pairs;
    for (int c = 0; c < n_qubits; ++c) {
        for (int t = 0; t < n_qubits; ++t) {
            if (c != t) {
                pairs.emplace_back(c, t);
            }
        }
    }
    return from_pairs(n_qubits, std::move(pairs));
}

Connectivity Connectivity::line(int n_qubits)
{
    std::vector<std::pair<int, int>> pairs;
    for (int q = 0; q + 1 < n_qubits; ++q) {
        pairs.emplace_back(q, q + 1);
        pairs.emplace_back(q + 1, q);
    }
    return from_pairs(n_qubits, std::move(pairs));
}

Connectivity Connectivity::from_pairs(int n_qubits, std::vector<std::pair<int, int>> pairs)
{
    for (const auto &[c, t] : pairs) {
        if (c < 0 || t < 0 || c >= n_qubits || t >= n_qubits) {
            throw std::invalid_argument("connectivity pair (" + std::to_string(c) + "," +
                                        std::to_string(t) + ") out of range");
        }
        if (c == t) {
            throw std::invalid_argument("connectivity contains self-pair on qubit " +
                                        std::to_string(c));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    Connectivity conn;
    conn.pairs_ = std::move(pairs);
    return conn;
}

GateInstance Action::placement() const
{
    if (is_stop()) {
        throw std::logic_error("Stop has no gate placement");
    }
    if (flowq::is_rotation(kind)) {
        return GateInstance::rotation(kind, qubit0, -1);
    }
    return GateInstance::cnot(qubit0, qubit1);
}

std::string Action::str() const
{
    if (is_stop()) {
        return "STOP";
    }
    std::string s(gate_name(kind));
    s += "(" + std::to_string(qubit0);
    if (!flowq::is_rotation(kind)) {
        s += "," + std::to_string(qubit1);
    }
    return s + ")";
}

ActionSpace::ActionSpace(int n_qubits, std::vector<GateKind> gate_set, Connectivity connectivity)
    : n_qubits_(n_qubits), connectivity_(std::move(connectivity))
{
    if (n_qubits < 1) {
        throw std::invalid_argument("ActionSpace: need at least one qubit");
    }
    if (gate_set.empty()) {
        throw std::invalid_argument("ActionSpace: empty gate set");
    }
    std::sort(gate_set.begin(), gate_set.end());
    gate_set.erase(std::unique(gate_set.begin(), gate_set.end()), gate_set.end());
    if (std::none_of(gate_set.begin(), gate_set.end(), [](GateKind k) { return is_rotation(k); })) {
        throw std::invalid_argument("ActionSpace: gate set needs at least one rotation");
    }
    gate_set_ = std::move(gate_set);

    for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ}) {
        if (std::find(gate_set_.begin(), gate_set_.end(), kind) == gate_set_.end()) {
            continue;
        }
        for (int q = 0; q < n_qubits; ++q) {
            actions_.push_back(Action::place(kind, q));
        }
    }
    if (std::find(gate_set_.begin(), gate_set_.end(), GateKind::CNOT) != gate_set_.end()) {
        for (const auto &[c, t] : connectivity_.pairs()) {
            if (c >= n_qubits || t >= n_qubits) {
                throw std::invalid_argument("ActionSpace: connectivity exceeds qubit count");
            }
            actions_.push_back(Action::place(GateKind::CNOT, c, t));
        }
    }
    actions_.push_back(Action::stop());
}

ActionSpace ActionSpace::full(int n_qubits)
{
    return ActionSpace(n_qubits, {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CNOT},
                       Connectivity::all_to_all(n_qubits));
}

int ActionSpace::index_of(const GateInstance &gate) const
{
    for (std::size_t i = 0; i + 1 < actions_.size(); ++i) {
        const Action &a = actions_[i];
        if (a.kind == gate.kind && a.qubit0 == gate.qubit0 &&
            (gate.is_rotation() || a.qubit1 == gate.qubit1)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

int ActionSpace::index_of(const Action &action) const
{
    if (action.is_stop()) {
        return static_cast<int>(stop_index());
    }
    return index_of(action.placement());
}

} // namespace flowq
