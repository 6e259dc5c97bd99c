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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flowq {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/**
 * Tensor product of single-qubit Paulis, one label per qubit.
 *
 * Text form is one character per qubit with character k acting on qubit k,
 * so "ZIX" is Z on qubit 0 and X on qubit 2. The all-I string is the
 * identity.
 */
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(int n_qubits);
    explicit PauliString(std::vector<Pauli> ops);

    static PauliString parse(std::string_view text);
    /// Single non-identity factor on `qubit`.
    static PauliString single(int n_qubits, int qubit, Pauli p);

    int n_qubits() const { return static_cast<int>(ops_.size()); }
    Pauli operator[](int q) const { return ops_[q]; }
    void set(int q, Pauli p);

    /// Bit q set when the factor on q flips the computational basis (X or Y).
    std::uint64_t x_mask() const;
    /// Bit q set when the factor on q carries a Z component (Z or Y).
    std::uint64_t z_mask() const;
    int y_count() const;
    int weight() const;
    bool is_identity() const { return weight() == 0; }

    std::string str() const;

    auto operator<=>(const PauliString &) const = default;
    bool operator==(const PauliString &) const = default;

  private:
    std::vector<Pauli> ops_;
};

struct PauliTerm {
    double coeff;
    PauliString string;
};

/**
 * Real-weighted sum of Pauli strings on a fixed number of qubits. Duplicate
 * strings are merged at construction and terms are kept in insertion order of
 * first appearance.
 */
class Observable {
  public:
    Observable() = default;
    explicit Observable(int n_qubits) : n_qubits_(n_qubits) {}
    Observable(int n_qubits, std::vector<PauliTerm> terms);

    void add_term(double coeff, const PauliString &string);

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    /// Coefficient of the all-I term, 0 when absent.
    double constant() const;

  private:
    int n_qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

/// Contents of an observable file: the operator plus an optional
/// computational-basis preparation (char k = qubit k, e.g. "1100").
struct ObservableFile {
    Observable observable;
    std::optional<std::string> prepare;
};

/**
 * Parses the line-based observable format:
 *
 *     # comment
 *     qubits 4
 *     prepare 1100
 *     -0.0988 IIII
 *     0.1712 ZIII
 *
 * Throws std::runtime_error with the offending line number on malformed input.
 */
ObservableFile parse_observable(std::istream &in);
ObservableFile load_observable(const std::string &path);
void write_observable(std::ostream &out, const ObservableFile &file);

/// Checks a preparation bitstring against a qubit count and returns the basis
/// index with qubit k at bit k.
std::uint64_t basis_index_from_bits(std::string_view bits, int n_qubits);

} // namespace flowq
