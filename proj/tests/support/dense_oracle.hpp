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

// Independent dense-matrix reference implementations used only by tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "flowq/qsim/circuit.hpp"
#include "flowq/qsim/pauli.hpp"
#include "flowq/qsim/statevector.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli2(char p)
{
    Mat m(2, 2);
    switch (p) {
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, C(0, -1), C(0, 1), 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        m << 1, 0, 0, 1;
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Qubit 0 is the least-significant index bit, so it is the rightmost factor.
inline Mat embed1(const Mat &u, int q, int n)
{
    Mat out = Mat::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
        out = kron(out, k == q ? u : Mat(Mat::Identity(2, 2)));
    }
    return out;
}

inline Mat pauli_string(const std::string &s)
{
    Mat out = Mat::Identity(1, 1);
    for (int k = static_cast<int>(s.size()) - 1; k >= 0; --k) {
        out = kron(out, pauli2(s[static_cast<std::size_t>(k)]));
    }
    return out;
}

inline Mat observable(const flowq::Observable &obs)
{
    const Eigen::Index dim = Eigen::Index{1} << obs.n_qubits();
    Mat h = Mat::Zero(dim, dim);
    for (const auto &t : obs.terms()) {
        h += t.coeff * pauli_string(t.string.str());
    }
    return h;
}

/// exp(-i theta sigma / 2) = cos(theta/2) I - i sin(theta/2) sigma.
inline Mat rotation(char axis, double theta)
{
    return std::cos(theta / 2) * Mat(Mat::Identity(2, 2)) - C(0, 1) * std::sin(theta / 2) * pauli2(axis);
}

/// CNOT = |0><0|_c (x) I + |1><1|_c (x) X_t.
inline Mat cnot(int c, int t, int n)
{
    Mat p0(2, 2), p1(2, 2);
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    Mat a = Mat::Identity(1, 1);
    Mat b = Mat::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
        const Mat id = Mat::Identity(2, 2);
        a = kron(a, k == c ? p0 : id);
        b = kron(b, k == c ? p1 : (k == t ? pauli2('X') : id));
    }
    return a + b;
}

inline Mat gate(const flowq::GateInstance &g, double theta, int n)
{
    switch (g.kind) {
    case flowq::GateKind::RX:
        return embed1(rotation('X', theta), g.qubit0, n);
    case flowq::GateKind::RY:
        return embed1(rotation('Y', theta), g.qubit0, n);
    case flowq::GateKind::RZ:
        return embed1(rotation('Z', theta), g.qubit0, n);
    case flowq::GateKind::CNOT:
        return cnot(g.qubit0, g.qubit1, n);
    }
    return {};
}

inline Mat unitary(const flowq::CircuitArch &arch, const std::vector<double> &theta)
{
    const int n = arch.n_qubits();
    Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &g : arch.gates()) {
        u = gate(g, g.is_rotation() ? theta[static_cast<std::size_t>(g.param)] : 0.0, n) * u;
    }
    return u;
}

inline Vec to_eigen(const flowq::StateVector &psi)
{
    Vec v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = psi[i];
    }
    return v;
}

inline flowq::CircuitArch random_circuit(int n, int n_gates, std::mt19937_64 &rng)
{
    flowq::CircuitArch arch(n);
    std::uniform_int_distribution<int> kind(0, n > 1 ? 3 : 2);
    std::uniform_int_distribution<int> qubit(0, n - 1);
    for (int i = 0; i < n_gates; ++i) {
        const int k = kind(rng);
        if (k == 3) {
            const int c = qubit(rng);
            int t = qubit(rng);
            while (t == c) {
                t = qubit(rng);
            }
            arch.append_cnot(c, t);
        } else {
            arch.append_rotation(static_cast<flowq::GateKind>(k), qubit(rng));
        }
    }
    return arch;
}

inline std::vector<double> random_angles(int n, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

inline flowq::Observable random_observable(int n, int n_terms, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    flowq::Observable obs(n);
    for (int i = 0; i < n_terms; ++i) {
        std::string s;
        for (int q = 0; q < n; ++q) {
            s += "IXYZ"[letter(rng)];
        }
        obs.add_term(coeff(rng), flowq::PauliString::parse(s));
    }
    return obs;
}

inline flowq::StateVector random_state(int n, std::mt19937_64 &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<C> amp(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amp) {
        a = C(g(rng), g(rng));
        norm += std::norm(a);
    }
    for (auto &a : amp) {
        a /= std::sqrt(norm);
    }
    return flowq::StateVector(n, amp);
}

} // namespace oracle
