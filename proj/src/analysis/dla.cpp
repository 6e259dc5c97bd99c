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

#include "flowq/analysis/dla.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace flowq {

GeneratorSet::GeneratorSet(const std::vector<SignedPauli> &gens)
{
    for (const auto &g : gens) {
        insert(g);
    }
}

bool GeneratorSet::contains_string(const SignedPauli &g) const
{
    return std::any_of(items_.begin(), items_.end(),
                       [&](const SignedPauli &h) { return h.x() == g.x() && h.z() == g.z(); });
}

bool GeneratorSet::insert(const SignedPauli &g)
{
    if (!items_.empty() && items_.front().n_qubits() != g.n_qubits()) {
        throw std::invalid_argument("GeneratorSet: qubit count mismatch");
    }
    if (contains_string(g)) {
        return false;
    }
    items_.push_back(g);
    return true;
}

bool GeneratorSet::pairwise_commuting() const
{
    for (std::size_t i = 0; i < items_.size(); ++i) {
        for (std::size_t j = i + 1; j < items_.size(); ++j) {
            if (!items_[i].commutes_with(items_[j])) {
                return false;
            }
        }
    }
    return true;
}

std::vector<SignedPauli> effective_generators(const CircuitArch &arch)
{
    std::vector<SignedPauli> out;
    const auto &gates = arch.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!gates[i].is_rotation()) {
            continue;
        }
        const Pauli sigma = gates[i].kind == GateKind::RX   ? Pauli::X
                            : gates[i].kind == GateKind::RY ? Pauli::Y
                                                            : Pauli::Z;
        SignedPauli g(PauliString::single(arch.n_qubits(), gates[i].qubit0, sigma));
        for (std::size_t j = i + 1; j < gates.size(); ++j) {
            if (gates[j].kind == GateKind::CNOT) {
                g = conjugate_cnot(g, gates[j].qubit0, gates[j].qubit1);
            }
        }
        out.push_back(g);
    }
    return out;
}

LieClosure lie_closure(const GeneratorSet &gens, int max_dim)
{
    if (gens.empty()) {
        throw std::invalid_argument("lie_closure: empty generator set");
    }
    GeneratorSet span;
    LieClosure result;
    for (const auto &g : gens.items()) {
        if (static_cast<int>(span.size()) >= max_dim) {
            result.capped = true;
            break;
        }
        span.insert(g);
    }
    // Every new element is commuted against everything found before it.
    for (std::size_t j = 1; j < span.size() && !result.capped; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const auto c = commutator(span.items()[i], span.items()[j]);
            if (!c || span.contains_string(*c)) {
                continue;
            }
            if (static_cast<int>(span.size()) >= max_dim) {
                result.capped = true;
                break;
            }
            span.insert(*c);
        }
    }
    result.basis = span.items();
    result.dimension = static_cast<int>(span.size());
    return result;
}

std::string_view two_level_class_name(TwoLevelClass c)
{
    switch (c) {
    case TwoLevelClass::Zero:
        return "0";
    case TwoLevelClass::Identity:
        return "identity";
    case TwoLevelClass::SigmaX:
        return "sigma_x";
    case TwoLevelClass::SigmaY:
        return "sigma_y";
    case TwoLevelClass::SigmaZ:
        return "sigma_z";
    case TwoLevelClass::Mixed:
        return "mixed";
    }
    return "?";
}

TwoLevelProjection project_two_level(const SignedPauli &g, std::string_view a,
                                     std::string_view b)
{
    const std::uint64_t ia = basis_index_from_bits(a, g.n_qubits());
    const std::uint64_t ib = basis_index_from_bits(b, g.n_qubits());
    if (ia == ib) {
        throw std::invalid_argument("project_two_level: basis states must differ");
    }
    // G|v> = i^k (-1)^{|v & z|} X^x|v> in symplectic form.
    const int k = g.phase() + std::popcount(g.x() & g.z());
    static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    auto element = [&](std::uint64_t row, std::uint64_t col) -> Complex {
        if ((col ^ g.x()) != row) {
            return {0.0, 0.0};
        }
        const int sign = (std::popcount(col & g.z()) & 1) ? 2 : 0;
        return i_pow[(k + sign) % 4];
    };
    const Complex m00 = element(ia, ia);
    const Complex m01 = element(ia, ib);
    const Complex m10 = element(ib, ia);
    const Complex m11 = element(ib, ib);
    const Complex i{0.0, 1.0};

    TwoLevelProjection p;
    p.c0 = 0.5 * (m00 + m11);
    p.cz = 0.5 * (m00 - m11);
    p.cx = 0.5 * (m01 + m10);
    p.cy = 0.5 * i * (m01 - m10);

    constexpr double tol = 1e-12;
    const Complex coeffs[4] = {p.c0, p.cx, p.cy, p.cz};
    const TwoLevelClass kinds[4] = {TwoLevelClass::Identity, TwoLevelClass::SigmaX,
                                    TwoLevelClass::SigmaY, TwoLevelClass::SigmaZ};
    int nonzero = 0;
    for (int c = 0; c < 4; ++c) {
        if (std::abs(coeffs[c]) > tol) {
            ++nonzero;
            p.kind = kinds[c];
            p.coefficient = coeffs[c];
        }
    }
    if (nonzero == 0) {
        p.kind = TwoLevelClass::Zero;
    } else if (nonzero > 1) {
        p.kind = TwoLevelClass::Mixed;
        p.coefficient = {0.0, 0.0};
    }
    return p;
}

} // namespace flowq
