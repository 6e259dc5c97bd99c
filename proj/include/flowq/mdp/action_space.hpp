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
#include <utility>
#include <vector>

#include "flowq/qsim/circuit.hpp"

namespace flowq {

/// Allowed ordered (control, target) pairs for CNOT placements.
class Connectivity {
  public:
    Connectivity() = default;
    static Connectivity all_to_all(int n_qubits);
    /// Nearest-neighbour chain, both directions.
    static Connectivity line(int n_qubits);
    /// Throws std::invalid_argument on self-pairs or out-of-range qubits.
    /// Duplicates are dropped and pairs are sorted lexicographically.
    static Connectivity from_pairs(int n_qubits, std::vector<std::pair<int, int>> pairs);

    const std::vector<std::pair<int, int>> &pairs() const { return pairs_; }
    bool operator==(const Connectivity &) const = default;

  private:
    std::vector<std::pair<int, int>> pairs_;
};

struct Action {
    enum class Type { Place, Stop };

    Type type = Type::Stop;
    GateKind kind = GateKind::RX;
    int qubit0 = -1;
    int qubit1 = -1;

    static Action stop() { return {}; }
    static Action place(GateKind kind, int q0, int q1 = -1) { return {Type::Place, kind, q0, q1}; }

    bool is_stop() const { return type == Type::Stop; }
    bool is_rotation() const { return !is_stop() && flowq::is_rotation(kind); }
    /// The gate this action appends (parameter index unset).
    GateInstance placement() const;
    std::string str() const;

    bool operator==(const Action &) const = default;
};

/**
 * Deterministically ordered action list: RX on each qubit, then RY, then RZ,
 * then CNOT over the connectivity pairs in lexicographic order, then Stop.
 * Kinds missing from the gate set are skipped. For the full gate set the size
 * is 3n + |pairs| + 1.
 *
 * Policy tokens reuse the same indices: placement i is token i, and the Stop
 * slot doubles as the BOS token.
 */
class ActionSpace {
  public:
    ActionSpace() = default;
    /// Throws std::invalid_argument for an empty gate set or one without any
    /// rotation (the empty circuit would then have no legal action).
    ActionSpace(int n_qubits, std::vector<GateKind> gate_set, Connectivity connectivity);
    static ActionSpace full(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    const std::vector<GateKind> &gate_set() const { return gate_set_; }
    const Connectivity &connectivity() const { return connectivity_; }

    std::size_t size() const { return actions_.size(); }
    const Action &operator[](std::size_t i) const { return actions_[i]; }
    const std::vector<Action> &actions() const { return actions_; }
    std::size_t stop_index() const { return actions_.size() - 1; }
    int bos_token() const { return static_cast<int>(stop_index()); }
    int vocab_size() const { return static_cast<int>(actions_.size()); }

    /// Index of the placement action matching `gate`, or -1.
    int index_of(const GateInstance &gate) const;
    int index_of(const Action &action) const;

  private:
    int n_qubits_ = 0;
    std::vector<GateKind> gate_set_;
    Connectivity connectivity_;
    std::vector<Action> actions_;
};

} // namespace flowq
