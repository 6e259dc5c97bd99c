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

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "flowq/qsim/circuit.hpp"
#include "flowq/qsim/pauli.hpp"

namespace flowq {

using Complex = std::complex<double>;

/**
 * Dense pure state on n qubits. Basis index bit k holds qubit k (qubit 0 is
 * the least-significant bit). Rotations follow R_a(theta) = exp(-i theta
 * sigma_a / 2).
 */
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, std::vector<Complex> amplitudes);

    static StateVector zero(int n_qubits) { return StateVector(n_qubits); }
    static StateVector basis(int n_qubits, std::uint64_t index);
    /// Computational-basis preparation, char k = qubit k.
    static StateVector from_bits(std::string_view bits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amp_.size(); }
    const std::vector<Complex> &amplitudes() const { return amp_; }
    Complex operator[](std::size_t i) const { return amp_[i]; }

    void apply_rx(int q, double theta);
    void apply_ry(int q, double theta);
    void apply_rz(int q, double theta);
    void apply_cnot(int control, int target);
    void apply_gate(const GateInstance &gate, double theta);

    double norm_squared() const;

  private:
    void check_qubit(int q) const;

    int n_qubits_ = 0;
    std::vector<Complex> amp_;
};

/// Applies the circuit in list order. Throws on a parameter-count or qubit
/// mismatch, or when `initial` deviates from unit norm by more than 1e-9.
StateVector run_statevector(const CircuitArch &arch, std::span<const double> theta,
                            const StateVector &initial);
StateVector run_statevector(const CircuitArch &arch, std::span<const double> theta);

/// <psi|P|psi> for a single Pauli string (complex in general).
Complex pauli_expectation(const StateVector &state, const PauliString &string);

/// sum_k c_k <psi|P_k|psi>. Throws std::logic_error if the imaginary residual
/// exceeds 1e-9.
double expectation(const StateVector &state, const Observable &obs);

std::vector<double> measure_probs(const StateVector &state);

} // namespace flowq
