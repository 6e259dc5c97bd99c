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

#include <cstdint>
#include <optional>
#include <string>

#include "flowq/qsim/pauli.hpp"
#include "flowq/qsim/statevector.hpp"

namespace flowq {

/**
 * Pauli string with an exact phase i^phase (phase in 0..3), stored in
 * symplectic form: bit q of `x` / `z` marks an X / Z component on qubit q, so
 * Y sits in both masks.
 */
class SignedPauli {
  public:
    SignedPauli() = default;
    SignedPauli(int n_qubits, std::uint64_t x, std::uint64_t z, int phase = 0);
    explicit SignedPauli(const PauliString &string, int phase = 0);
    static SignedPauli parse(std::string_view text);

    int n_qubits() const { return n_; }
    std::uint64_t x() const { return x_; }
    std::uint64_t z() const { return z_; }
    /// Exponent k of the prefactor i^k.
    int phase() const { return phase_; }
    Complex phase_value() const;
    PauliString string() const;
    bool is_identity() const { return x_ == 0 && z_ == 0; }
    /// Hermitian iff the prefactor is real.
    bool is_hermitian() const { return phase_ % 2 == 0; }
    SignedPauli negated() const { return {n_, x_, z_, phase_ + 2}; }

    /// "+XIIY", "-ZZ", "+iX", "-iY" (character k acts on qubit k).
    std::string str() const;

    /// Exact product this * other.
    SignedPauli operator*(const SignedPauli &other) const;
    bool commutes_with(const SignedPauli &other) const;

    bool operator==(const SignedPauli &) const = default;

  private:
    int n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

/// C P C for C = CNOT(control, target):
/// X_c -> X_c X_t, Z_t -> Z_c Z_t, X_t and Z_c fixed, Y composed as i X Z.
SignedPauli conjugate_cnot(const SignedPauli &p, int control, int target);

/// [P, Q] = PQ - QP, which is 0 for commuting strings and 2 PQ otherwise.
/// Returns the Pauli part of 2PQ (the factor 2 is dropped) or nullopt.
std::optional<SignedPauli> commutator(const SignedPauli &p, const SignedPauli &q);

} // namespace flowq
