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
#include <string_view>
#include <vector>

#include "flowq/analysis/signed_pauli.hpp"
#include "flowq/qsim/circuit.hpp"

namespace flowq {

/// Signed Pauli generators with pairwise distinct strings.
class GeneratorSet {
  public:
    GeneratorSet() = default;
    explicit GeneratorSet(const std::vector<SignedPauli> &gens);

    /// Adds `g` unless its string is already present; returns true if added.
    bool insert(const SignedPauli &g);
    bool contains_string(const SignedPauli &g) const;
    const std::vector<SignedPauli> &items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    bool pairwise_commuting() const;

  private:
    std::vector<SignedPauli> items_;
};

/// One generator per rotation gate, in gate order: the rotation's Pauli
/// conjugated by every CNOT that follows it in the gate list.
std::vector<SignedPauli> effective_generators(const CircuitArch &arch);

struct LieClosure {
    int dimension = 0;
    std::vector<SignedPauli> basis;
    /// True when the closure stopped at `max_dim` before saturating.
    bool capped = false;
};

/// Closes the span of the generators under commutators. Each nonzero
/// commutator of two Pauli strings is (up to a scalar) another Pauli string,
/// so the dimension is the number of distinct strings reached. Throws
/// std::invalid_argument for an empty input.
LieClosure lie_closure(const GeneratorSet &gens, int max_dim = 4096);

enum class TwoLevelClass { Zero, Identity, SigmaX, SigmaY, SigmaZ, Mixed };

std::string_view two_level_class_name(TwoLevelClass c);

/// P G P restricted to span{|a>, |b>} in the basis (|a>, |b>), written as
/// c0 I + cx sigma_x + cy sigma_y + cz sigma_z.
struct TwoLevelProjection {
    Complex c0;
    Complex cx;
    Complex cy;
    Complex cz;
    TwoLevelClass kind = TwoLevelClass::Zero;
    /// The single nonzero coefficient for the pure classes, 0 otherwise.
    Complex coefficient;
};

/// Basis states are bitstrings with character k for qubit k.
TwoLevelProjection project_two_level(const SignedPauli &g, std::string_view a,
                                     std::string_view b);

} // namespace flowq
