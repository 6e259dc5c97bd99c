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

#include <span>
#include <vector>

#include "flowq/qsim/statevector.hpp"

namespace flowq {

/// Single-qubit depolarizing noise applied after every gate to each qubit the
/// gate acts on: rho -> (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z).
struct NoiseSpec {
    double depolarizing_p = 0.0;

    /// Throws std::invalid_argument unless 0 <= p < 1.
    void validate() const;
};

inline constexpr int kMaxDensityQubits = 10;

/// Dense 2^n x 2^n density operator, row-major, same basis ordering as
/// StateVector.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(int n_qubits);
    static DensityMatrix from_pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }

    void apply_gate(const GateInstance &gate, double theta);
    void depolarize(int q, double p);

    Complex trace() const;
    /// Largest |rho - rho^dagger| entry.
    double hermiticity_error() const;

  private:
    void apply_single(int q, const Complex (&u)[2][2]);
    void apply_cnot(int control, int target);

    int n_qubits_ = 0;
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Noisy evolution from `initial` (|0...0> when omitted). Throws for more than
/// kMaxDensityQubits qubits or a parameter-count mismatch.
DensityMatrix run_density(const CircuitArch &arch, std::span<const double> theta,
                          const NoiseSpec &noise, const StateVector &initial);
DensityMatrix run_density(const CircuitArch &arch, std::span<const double> theta,
                          const NoiseSpec &noise);

/// tr(rho P) for one Pauli string.
Complex pauli_expectation(const DensityMatrix &rho, const PauliString &string);
/// tr(rho H); throws std::logic_error if the imaginary part exceeds 1e-9.
double expectation_density(const DensityMatrix &rho, const Observable &obs);

} // namespace flowq
