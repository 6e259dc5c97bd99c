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

#include "flowq/qsim/circuit.hpp"

namespace flowq {

/// Circuit quality columns: parameters, layered depth, gates, CNOTs.
struct CircuitMetrics {
    int P = 0;
    int D = 0;
    int G = 0;
    int C = 0;

    bool operator==(const CircuitMetrics &) const = default;
};

/// D is the ASAP layering depth: each gate lands on layer
/// 1 + max(layer of the latest gate sharing one of its qubits).
CircuitMetrics metrics(const CircuitArch &arch);

} // namespace flowq
