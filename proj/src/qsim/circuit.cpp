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

#include "flowq/qsim/circuit.hpp"

#include <fstream>
#include <stdexcept>

namespace flowq {

std::string_view gate_name(GateKind kind)
{
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CNOT:
        return "CNOT";
    }
    throw std::logic_error("unreachable gate kind");
}

GateKind gate_kind_from_name(std::string_view name)
{
    if (name == "RX") {
        return GateKind::RX;
    }
    if (name == "RY") {
        return GateKind::RY;
    }
    if (name == "RZ") {
        return GateKind::RZ;
    }
    if (name == "CNOT") {
        return GateKind::CNOT;
    }
    throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

GateInstance GateInstance::rotation(GateKind kind, int qubit, int param)
{
    if (!flowq::is_rotation(kind)) {
        throw std::invalid_argument("GateInstance::rotation: CNOT is not a rotation");
    }
    return {kind, qubit, -1, param};
}

GateInstance GateInstance::cnot(int control, int target)
{
    return {GateKind::CNOT, control, target, -1};
}

bool GateInstance::same_placement(const GateInstance &other) const
{
    return kind == other.kind && qubit0 == other.qubit0 &&
           (is_rotation() || qubit1 == other.qubit1);
}

CircuitArch::CircuitArch(int n_qubits) : n_qubits_(n_qubits)
{
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("CircuitArch: qubit count must be in [1, 30], got " +
                                    std::to_string(n_qubits));
    }
}

void CircuitArch::check_qubit(int q) const
{
    if (q < 0 || q >= n_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(n_qubits_) + "-qubit circuit");
    }
}

int CircuitArch::append_rotation(GateKind kind, int qubit)
{
    check_qubit(qubit);
    gates_.push_back(GateInstance::rotation(kind, qubit, n_params_));
    return n_params_++;
}

void CircuitArch::append_cnot(int control, int target)
{
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ (qubit " +
                                    std::to_string(control) + ")");
    }
    gates_.push_back(GateInstance::cnot(control, target));
}

void CircuitArch::append(const GateInstance &gate)
{
    if (gate.is_rotation()) {
        append_rotation(gate.kind, gate.qubit0);
    } else {
        append_cnot(gate.qubit0, gate.qubit1);
    }
}

nlohmann::json circuit_to_json(const CircuitArch &arch, const std::vector<double> *theta)
{
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : arch.gates()) {
        nlohmann::json entry;
        entry["kind"] = std::string(gate_name(g.kind));
        if (g.is_rotation()) {
            entry["qubits"] = {g.qubit0};
            entry["param"] = g.param;
        } else {
            entry["qubits"] = {g.qubit0, g.qubit1};
        }
        gates.push_back(std::move(entry));
    }
    nlohmann::json doc;
    doc["n_qubits"] = arch.n_qubits();
    doc["gates"] = std::move(gates);
    if (theta != nullptr) {
        doc["theta"] = *theta;
    }
    return doc;
}

CircuitFile circuit_from_json(const nlohmann::json &doc)
{
    auto fail = [](const std::string &msg) {
        throw std::runtime_error("circuit JSON: " + msg);
    };
    if (!doc.is_object()) {
        fail("top level must be an object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "n_qubits" && key != "gates" && key != "theta") {
            fail("unknown key '" + key + "'");
        }
    }
    if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
        fail("'n_qubits' must be an integer");
    }
    if (!doc.contains("gates") || !doc["gates"].is_array()) {
        fail("'gates' must be an array");
    }
    CircuitFile out;
    try {
        out.arch = CircuitArch(doc["n_qubits"].get<int>());
    } catch (const std::exception &e) {
        fail(e.what());
    }
    int index = 0;
    for (const auto &g : doc["gates"]) {
        const std::string where = "gate " + std::to_string(index++) + ": ";
        if (!g.is_object() || !g.contains("kind") || !g["kind"].is_string() ||
            !g.contains("qubits") || !g["qubits"].is_array()) {
            fail(where + "needs string 'kind' and array 'qubits'");
        }
        for (const auto &[key, value] : g.items()) {
            if (key != "kind" && key != "qubits" && key != "param") {
                fail(where + "unknown key '" + key + "'");
            }
        }
        GateKind kind{};
        try {
            kind = gate_kind_from_name(g["kind"].get<std::string>());
        } catch (const std::invalid_argument &e) {
            fail(where + e.what());
        }
        const auto &qubits = g["qubits"];
        for (const auto &q : qubits) {
            if (!q.is_number_integer()) {
                fail(where + "qubit indices must be integers");
            }
        }
        try {
            if (is_rotation(kind)) {
                if (qubits.size() != 1) {
                    fail(where + "rotations act on exactly one qubit");
                }
                if (!g.contains("param") || !g["param"].is_number_integer()) {
                    fail(where + "rotations need an integer 'param'");
                }
                const int expected = out.arch.n_params();
                if (g["param"].get<int>() != expected) {
                    fail(where + "parameter indices must be 0..P-1 in first-use order (expected " +
                         std::to_string(expected) + ")");
                }
                out.arch.append_rotation(kind, qubits[0].get<int>());
            } else {
                if (qubits.size() != 2) {
                    fail(where + "CNOT needs [control, target]");
                }
                if (g.contains("param")) {
                    fail(where + "CNOT carries no parameter");
                }
                out.arch.append_cnot(qubits[0].get<int>(), qubits[1].get<int>());
            }
        } catch (const std::invalid_argument &e) {
            fail(where + e.what());
        } catch (const std::out_of_range &e) {
            fail(where + e.what());
        }
    }
    if (doc.contains("theta")) {
        const auto &theta = doc["theta"];
        if (!theta.is_array()) {
            fail("'theta' must be an array");
        }
        std::vector<double> values;
        for (const auto &v : theta) {
            if (!v.is_number()) {
                fail("'theta' entries must be numbers");
            }
            values.push_back(v.get<double>());
        }
        if (static_cast<int>(values.size()) != out.arch.n_params()) {
            fail("'theta' has " + std::to_string(values.size()) + " entries, circuit has " +
                 std::to_string(out.arch.n_params()) + " parameters");
        }
        out.theta = std::move(values);
    }
    return out;
}

CircuitFile load_circuit(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error("circuit JSON: " + std::string(e.what()));
    }
    return circuit_from_json(doc);
}

void save_circuit(const std::string &path, const CircuitArch &arch,
                  const std::vector<double> *theta)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write circuit file '" + path + "'");
    }
    out << circuit_to_json(arch, theta).dump(2) << '\n';
}

} // namespace flowq
