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

#include "flowq/analysis/signed_pauli.hpp"

#include <bit>
#include <stdexcept>

namespace flowq {

namespace {

// The symplectic form stores i^k X^x Z^z, while Pauli letters use Y = i X Z.
// A Y-letter string with prefactor i^p therefore has i^(p + nY) here.
int count_y(std::uint64_t x, std::uint64_t z)
{
    return std::popcount(x & z);
}

int wrap(int k)
{
    return ((k % 4) + 4) % 4;
}

} // namespace

SignedPauli::SignedPauli(int n_qubits, std::uint64_t x, std::uint64_t z, int phase)
    : n_(n_qubits), x_(x), z_(z), phase_(wrap(phase))
{
    if (n_qubits < 1 || n_qubits > 63) {
        throw std::invalid_argument("SignedPauli: qubit count must be in 1..63");
    }
    const std::uint64_t outside = ~((std::uint64_t{1} << n_qubits) - 1);
    if ((x & outside) || (z & outside)) {
        throw std::invalid_argument("SignedPauli: mask exceeds the qubit count");
    }
}

SignedPauli::SignedPauli(const PauliString &string, int phase)
    : SignedPauli(string.n_qubits(), string.x_mask(), string.z_mask(), 0)
{
    phase_ = wrap(phase);
}

SignedPauli SignedPauli::parse(std::string_view text)
{
    int phase = 0;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        phase = text.front() == '-' ? 2 : 0;
        text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    return SignedPauli(PauliString::parse(text), phase);
}

Complex SignedPauli::phase_value() const
{
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_];
}

PauliString SignedPauli::string() const
{
    PauliString s(n_);
    for (int q = 0; q < n_; ++q) {
        const bool xb = (x_ >> q) & 1U;
        const bool zb = (z_ >> q) & 1U;
        s.set(q, xb ? (zb ? Pauli::Y : Pauli::X) : (zb ? Pauli::Z : Pauli::I));
    }
    return s;
}

std::string SignedPauli::str() const
{
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    return prefix[phase_] + string().str();
}

SignedPauli SignedPauli::operator*(const SignedPauli &other) const
{
    if (n_ != other.n_) {
        throw std::invalid_argument("SignedPauli: qubit count mismatch in product");
    }
    // Work in i^k X^x Z^z form: moving Z^z1 past X^x2 costs (-1)^|z1 & x2|.
    const int k1 = phase_ + count_y(x_, z_);
    const int k2 = other.phase_ + count_y(other.x_, other.z_);
    const int swap = 2 * std::popcount(z_ & other.x_);
    const std::uint64_t x = x_ ^ other.x_;
    const std::uint64_t z = z_ ^ other.z_;
    return {n_, x, z, k1 + k2 + swap - count_y(x, z)};
}

bool SignedPauli::commutes_with(const SignedPauli &other) const
{
    if (n_ != other.n_) {
        throw std::invalid_argument("SignedPauli: qubit count mismatch");
    }
    return ((std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_)) & 1) == 0;
}

SignedPauli conjugate_cnot(const SignedPauli &p, int control, int target)
{
    if (control == target || control < 0 || target < 0 || control >= p.n_qubits() ||
        target >= p.n_qubits()) {
        throw std::invalid_argument("conjugate_cnot: invalid control/target");
    }
    // X^x and Z^z are each mapped to a pure X-product and a pure Z-product,
    // so the prefactor of the symplectic form is unchanged.
    const int k = p.phase() + count_y(p.x(), p.z());
    std::uint64_t x = p.x();
    std::uint64_t z = p.z();
    x ^= ((x >> control) & 1U) << target;
    z ^= ((z >> target) & 1U) << control;
    return {p.n_qubits(), x, z, k - count_y(x, z)};
}

std::optional<SignedPauli> commutator(const SignedPauli &p, const SignedPauli &q)
{
    if (p.commutes_with(q)) {
        return std::nullopt;
    }
    return p * q;
}

} // namespace flowq
