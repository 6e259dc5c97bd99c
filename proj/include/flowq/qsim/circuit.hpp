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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace flowq {

enum class GateKind { RX, RY, RZ, CNOT };

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);
inline bool is_rotation(GateKind kind) { return kind != GateKind::CNOT; }

/// One gate placement. Rotations act on `qubit0` and carry a parameter index;
/// CNOT uses `qubit0` as control and `qubit1` as target and has no parameter.
struct GateInstance {
    GateKind kind = GateKind::RX;
    int qubit0 = 0;
    int qubit1 = -1;
    int param = -1;

    static GateInstance rotation(GateKind kind, int qubit, int param);
    static GateInstance cnot(int control, int target);

    bool is_rotation() const { return flowq::is_rotation(kind); }
    int arity() const { return is_rotation() ? 1 : 2; }
    bool acts_on(int q) const { return qubit0 == q || (!is_rotation() && qubit1 == q); }
    /// Same kind on the same ordered qubit tuple; parameter indices ignored.
    bool same_placement(const GateInstance &other) const;

    bool operator==(const GateInstance &) const = default;
};

/**
 * Ordered gate list on a fixed register. Gates are stored in application
 * order and rotation parameters are numbered 0..n_params-1 in first-use order;
 * the append helpers allocate parameter indices so the invariant holds by
 * construction.
 */
class CircuitArch {
  public:
    CircuitArch() = default;
    explicit CircuitArch(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    int n_params() const { return n_params_; }
    const std::vector<GateInstance> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    /// Appends a rotation bound to a fresh parameter; returns its index.
    int append_rotation(GateKind kind, int qubit);
    void append_cnot(int control, int target);
    /// Appends a placement (parameter index is reassigned for rotations).
    void append(const GateInstance &gate);

    bool operator==(const CircuitArch &) const = default;

  private:
    void check_qubit(int q) const;

    int n_qubits_ = 0;
    int n_params_ = 0;
    std::vector<GateInstance> gates_;
};

/// Circuit JSON: {"n_qubits": N, "gates": [{"kind": "RY", "qubits": [0],
/// "param": 0}, {"kind": "CNOT", "qubits": [0, 1]}], "theta": [...]}.
/// "theta" is optional on input.
nlohmann::json circuit_to_json(const CircuitArch &arch,
                               const std::vector<double> *theta = nullptr);

struct CircuitFile {
    CircuitArch arch;
    std::optional<std::vector<double>> theta;
};

/// Validates the schema and the parameter-numbering invariant; throws
/// std::runtime_error naming the offending gate.
CircuitFile circuit_from_json(const nlohmann::json &doc);
CircuitFile load_circuit(const std::string &path);
void save_circuit(const std::string &path, const CircuitArch &arch,
                  const std::vector<double> *theta = nullptr);

} // namespace flowq
