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

#include "flowq/qsim/density.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace flowq {

void NoiseSpec::validate() const
{
    if (!(depolarizing_p >= 0.0 && depolarizing_p < 1.0)) {
        throw std::invalid_argument("depolarizing strength must lie in [0, 1), got " +
                                    std::to_string(depolarizing_p));
    }
}

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits)
{
    if (n_qubits < 1 || n_qubits > kMaxDensityQubits) {
        throw std::invalid_argument("DensityMatrix: qubit count must be in [1, " +
                                    std::to_string(kMaxDensityQubits) + "], got " +
                                    std::to_string(n_qubits));
    }
    dim_ = std::size_t{1} << n_qubits;
    data_.assign(dim_ * dim_, Complex{0.0, 0.0});
    data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi)
{
    DensityMatrix rho(psi.n_qubits());
    const auto &a = psi.amplitudes();
    for (std::size_t r = 0; r < rho.dim_; ++r) {
        for (std::size_t c = 0; c < rho.dim_; ++c) {
            rho(r, c) = a[r] * std::conj(a[c]);
        }
    }
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits)
{
    DensityMatrix rho(n_qubits);
    rho.data_[0] = 0.0;
    const double w = 1.0 / static_cast<double>(rho.dim_);
    for (std::size_t i = 0; i < rho.dim_; ++i) {
        rho(i, i) = w;
    }
    return rho;
}

void DensityMatrix::apply_single(int q, const Complex (&u)[2][2])
{
    const std::size_t bit = std::size_t{1} << q;
    // rows: rho <- U rho
    for (std::size_t r = 0; r < dim_; ++r) {
        if (r & bit) {
            continue;
        }
        Complex *row0 = &data_[r * dim_];
        Complex *row1 = &data_[(r | bit) * dim_];
        for (std::size_t c = 0; c < dim_; ++c) {
            const Complex a0 = row0[c];
            const Complex a1 = row1[c];
            row0[c] = u[0][0] * a0 + u[0][1] * a1;
            row1[c] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
    // columns: rho <- rho U^dagger
    const Complex v00 = std::conj(u[0][0]);
    const Complex v01 = std::conj(u[0][1]);
    const Complex v10 = std::conj(u[1][0]);
    const Complex v11 = std::conj(u[1][1]);
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex *row = &data_[r * dim_];
        for (std::size_t c = 0; c < dim_; ++c) {
            if (c & bit) {
                continue;
            }
            const Complex a0 = row[c];
            const Complex a1 = row[c | bit];
            row[c] = a0 * v00 + a1 * v01;
            row[c | bit] = a0 * v10 + a1 * v11;
        }
    }
}

void DensityMatrix::apply_cnot(int control, int target)
{
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    auto perm = [&](std::size_t i) { return (i & cbit) ? (i ^ tbit) : i; };
    std::vector<Complex> out(data_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
        const std::size_t pr = perm(r);
        for (std::size_t c = 0; c < dim_; ++c) {
            out[pr * dim_ + perm(c)] = data_[r * dim_ + c];
        }
    }
    data_ = std::move(out);
}

void DensityMatrix::apply_gate(const GateInstance &gate, double theta)
{
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    switch (gate.kind) {
    case GateKind::RX: {
        const Complex u[2][2] = {{c, {0.0, -s}}, {{0.0, -s}, c}};
        apply_single(gate.qubit0, u);
        break;
    }
    case GateKind::RY: {
        const Complex u[2][2] = {{c, -s}, {s, c}};
        apply_single(gate.qubit0, u);
        break;
    }
    case GateKind::RZ: {
        const Complex u[2][2] = {{std::polar(1.0, -theta / 2), 0.0},
                                 {0.0, std::polar(1.0, theta / 2)}};
        apply_single(gate.qubit0, u);
        break;
    }
    case GateKind::CNOT:
        apply_cnot(gate.qubit0, gate.qubit1);
        break;
    }
}

void DensityMatrix::depolarize(int q, double p)
{
    if (q < 0 || q >= n_qubits_) {
        throw std::out_of_range("depolarize: qubit out of range");
    }
    if (p == 0.0) {
        return;
    }
    // Blockwise on the (row bit q, column bit q) pair: populations relax toward
    // each other, coherences shrink by the Bloch contraction 1 - 4p/3.
    const double keep = 1.0 - 2.0 * p / 3.0;
    const double swap = 2.0 * p / 3.0;
    const double shrink = 1.0 - 4.0 * p / 3.0;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t r = 0; r < dim_; ++r) {
        if (r & bit) {
            continue;
        }
        for (std::size_t c = 0; c < dim_; ++c) {
            if (c & bit) {
                continue;
            }
            Complex &a00 = (*this)(r, c);
            Complex &a01 = (*this)(r, c | bit);
            Complex &a10 = (*this)(r | bit, c);
            Complex &a11 = (*this)(r | bit, c | bit);
            const Complex p00 = a00;
            const Complex p11 = a11;
            a00 = keep * p00 + swap * p11;
            a11 = keep * p11 + swap * p00;
            a01 *= shrink;
            a10 *= shrink;
        }
    }
}

Complex DensityMatrix::trace() const
{
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double DensityMatrix::hermiticity_error() const
{
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

DensityMatrix run_density(const CircuitArch &arch, std::span<const double> theta,
                          const NoiseSpec &noise, const StateVector &initial)
{
    noise.validate();
    if (arch.n_qubits() > kMaxDensityQubits) {
        throw std::invalid_argument("run_density: " + std::to_string(arch.n_qubits()) +
                                    " qubits exceeds the density backend limit of " +
                                    std::to_string(kMaxDensityQubits));
    }
    if (static_cast<int>(theta.size()) != arch.n_params()) {
        throw std::invalid_argument("run_density: theta has " + std::to_string(theta.size()) +
                                    " entries, circuit has " + std::to_string(arch.n_params()) +
                                    " parameters");
    }
    if (initial.n_qubits() != arch.n_qubits()) {
        throw std::invalid_argument("run_density: initial state qubit count mismatch");
    }
    DensityMatrix rho = DensityMatrix::from_pure(initial);
    const double p = noise.depolarizing_p;
    for (const auto &g : arch.gates()) {
        rho.apply_gate(g, g.is_rotation() ? theta[static_cast<std::size_t>(g.param)] : 0.0);
        rho.depolarize(g.qubit0, p);
        if (!g.is_rotation()) {
            rho.depolarize(g.qubit1, p);
        }
    }
    return rho;
}

DensityMatrix run_density(const CircuitArch &arch, std::span<const double> theta,
                          const NoiseSpec &noise)
{
    return run_density(arch, theta, noise, StateVector(arch.n_qubits()));
}

Complex pauli_expectation(const DensityMatrix &rho, const PauliString &string)
{
    if (string.n_qubits() != rho.n_qubits()) {
        throw std::invalid_argument("pauli_expectation: qubit count mismatch");
    }
    // tr(rho P) = sum_j c_j rho[j][j ^ x], c_j = i^{nY} (-1)^{popcount(j & z)}
    const std::uint64_t x = string.x_mask();
    const std::uint64_t z = string.z_mask();
    Complex acc{0.0, 0.0};
    for (std::uint64_t j = 0; j < rho.dim(); ++j) {
        const Complex v = rho(j, j ^ x);
        acc += (std::popcount(j & z) & 1) ? -v : v;
    }
    static const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return phases[string.y_count() & 3] * acc;
}

double expectation_density(const DensityMatrix &rho, const Observable &obs)
{
    if (obs.n_qubits() != rho.n_qubits()) {
        throw std::invalid_argument("expectation_density: observable has " +
                                    std::to_string(obs.n_qubits()) + " qubits, rho has " +
                                    std::to_string(rho.n_qubits()));
    }
    Complex total{0.0, 0.0};
    for (const auto &t : obs.terms()) {
        total += t.coeff * pauli_expectation(rho, t.string);
    }
    if (std::abs(total.imag()) > 1e-9) {
        throw std::logic_error("expectation_density: imaginary residual exceeds tolerance");
    }
    return total.real();
}

} // namespace flowq
