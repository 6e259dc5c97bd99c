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

#include "flowq/qsim/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace flowq {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kImagTolerance = 1e-9;

// i^k for k mod 4
Complex i_power(int k)
{
    switch (k & 3) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

} // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits)
{
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("StateVector: qubit count must be in [1, 30]");
    }
    amp_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amp_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amp_(std::move(amplitudes))
{
    if (n_qubits < 1 || n_qubits > 30 || amp_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("StateVector: amplitude count must be 2^n_qubits");
    }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index)
{
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw std::out_of_range("StateVector::basis: index out of range");
    }
    s.amp_[0] = 0.0;
    s.amp_[index] = 1.0;
    return s;
}

StateVector StateVector::from_bits(std::string_view bits)
{
    const int n = static_cast<int>(bits.size());
    return basis(n, basis_index_from_bits(bits, n));
}

void StateVector::check_qubit(int q) const
{
    if (q < 0 || q >= n_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range");
    }
}

void StateVector::apply_rx(int q, double theta)
{
    check_qubit(q);
    const double c = std::cos(theta / 2);
    const Complex mis{0.0, -std::sin(theta / 2)};
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const Complex a0 = amp_[i];
        const Complex a1 = amp_[i | bit];
        amp_[i] = c * a0 + mis * a1;
        amp_[i | bit] = mis * a0 + c * a1;
    }
}

void StateVector::apply_ry(int q, double theta)
{
    check_qubit(q);
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const Complex a0 = amp_[i];
        const Complex a1 = amp_[i | bit];
        amp_[i] = c * a0 - s * a1;
        amp_[i | bit] = s * a0 + c * a1;
    }
}

void StateVector::apply_rz(int q, double theta)
{
    check_qubit(q);
    const Complex e0 = std::polar(1.0, -theta / 2);
    const Complex e1 = std::polar(1.0, theta / 2);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        amp_[i] *= (i & bit) ? e1 : e0;
    }
}

void StateVector::apply_cnot(int control, int target)
{
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amp_[i], amp_[i | tbit]);
        }
    }
}

void StateVector::apply_gate(const GateInstance &gate, double theta)
{
    switch (gate.kind) {
    case GateKind::RX:
        apply_rx(gate.qubit0, theta);
        break;
    case GateKind::RY:
        apply_ry(gate.qubit0, theta);
        break;
    case GateKind::RZ:
        apply_rz(gate.qubit0, theta);
        break;
    case GateKind::CNOT:
        apply_cnot(gate.qubit0, gate.qubit1);
        break;
    }
}

double StateVector::norm_squared() const
{
    double total = 0.0;
    for (const auto &a : amp_) {
        total += std::norm(a);
    }
    return total;
}

StateVector run_statevector(const CircuitArch &arch, std::span<const double> theta,
                            const StateVector &initial)
{
    if (static_cast<int>(theta.size()) != arch.n_params()) {
        throw std::invalid_argument("run_statevector: theta has " + std::to_string(theta.size()) +
                                    " entries, circuit has " + std::to_string(arch.n_params()) +
                                    " parameters");
    }
    if (initial.n_qubits() != arch.n_qubits()) {
        throw std::invalid_argument("run_statevector: initial state has " +
                                    std::to_string(initial.n_qubits()) + " qubits, circuit has " +
                                    std::to_string(arch.n_qubits()));
    }
    if (std::abs(initial.norm_squared() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("run_statevector: initial state is not normalized");
    }
    StateVector state = initial;
    for (const auto &g : arch.gates()) {
        state.apply_gate(g, g.is_rotation() ? theta[static_cast<std::size_t>(g.param)] : 0.0);
    }
    return state;
}

StateVector run_statevector(const CircuitArch &arch, std::span<const double> theta)
{
    return run_statevector(arch, theta, StateVector(arch.n_qubits()));
}

Complex pauli_expectation(const StateVector &state, const PauliString &string)
{
    if (string.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("pauli_expectation: qubit count mismatch");
    }
    // P|j> = i^{nY} (-1)^{popcount(j & z)} |j ^ x>
    const std::uint64_t x = string.x_mask();
    const std::uint64_t z = string.z_mask();
    const auto &amp = state.amplitudes();
    Complex acc{0.0, 0.0};
    for (std::uint64_t j = 0; j < amp.size(); ++j) {
        const Complex term = std::conj(amp[j ^ x]) * amp[j];
        acc += (std::popcount(j & z) & 1) ? -term : term;
    }
    return i_power(string.y_count()) * acc;
}

double expectation(const StateVector &state, const Observable &obs)
{
    if (obs.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("expectation: observable has " +
                                    std::to_string(obs.n_qubits()) + " qubits, state has " +
                                    std::to_string(state.n_qubits()));
    }
    Complex total{0.0, 0.0};
    for (const auto &t : obs.terms()) {
        total += t.coeff * pauli_expectation(state, t.string);
    }
    if (std::abs(total.imag()) > kImagTolerance) {
        throw std::logic_error("expectation: imaginary residual " +
                               std::to_string(total.imag()) + " exceeds tolerance");
    }
    return total.real();
}

std::vector<double> measure_probs(const StateVector &state)
{
    std::vector<double> probs(state.dim());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = std::norm(state[i]);
    }
    return probs;
}

} // namespace flowq
