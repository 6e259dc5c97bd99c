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

#include "flowq/oracle/spectrum.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace flowq {

namespace {

void check_size(const Observable &obs)
{
    if (obs.n_qubits() < 1 || obs.n_qubits() > kMaxOracleQubits) {
        throw std::invalid_argument("oracle: observable must have 1.." +
                                    std::to_string(kMaxOracleQubits) + " qubits");
    }
}

} // namespace

Eigen::MatrixXcd dense_matrix(const Observable &obs)
{
    check_size(obs);
    const Eigen::Index dim = Eigen::Index{1} << obs.n_qubits();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto &t : obs.terms()) {
        const std::uint64_t x = t.string.x_mask();
        const std::uint64_t z = t.string.z_mask();
        const Complex phase = t.coeff * i_pow[t.string.y_count() % 4];
        for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
            const double sign = (std::popcount(j & z) & 1) ? -1.0 : 1.0;
            h(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) += sign * phase;
        }
    }
    return h;
}

SpectrumResult exact_extremes(const Observable &obs, bool with_vector)
{
    const Eigen::MatrixXcd h = dense_matrix(obs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        h, with_vector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("oracle: eigendecomposition failed");
    }
    SpectrumResult r;
    r.min_eigenvalue = solver.eigenvalues()(0);
    r.max_eigenvalue = solver.eigenvalues()(h.rows() - 1);
    if (with_vector) {
        const Eigen::VectorXcd v = solver.eigenvectors().col(0);
        r.residual = (h * v - r.min_eigenvalue * v).norm();
        r.ground_vector = std::vector<Complex>(v.data(), v.data() + v.size());
    }
    return r;
}

SpectrumResult power_iteration_min(const Observable &obs, double tol, int max_iters)
{
    const Eigen::MatrixXcd h = dense_matrix(obs);
    double shift = 0.0;
    for (const auto &t : obs.terms()) {
        shift += std::abs(t.coeff);
    }
    const Eigen::Index dim = h.rows();
    const Eigen::MatrixXcd a = shift * Eigen::MatrixXcd::Identity(dim, dim) - h;

    // Deterministic start vector with support on every basis state.
    Eigen::VectorXcd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        v(k) = Complex(1.0 + 0.01 * static_cast<double>(k % 7), 0.003 * static_cast<double>(k % 5));
    }
    v.normalize();
    for (int it = 0; it < max_iters; ++it) {
        v = a * v;
        v.normalize();
        if (it % 16 == 0) {
            const Eigen::VectorXcd hv = h * v;
            const double lambda = v.dot(hv).real();
            const double residual = (hv - lambda * v).norm();
            if (residual < tol) {
                SpectrumResult r;
                r.min_eigenvalue = lambda;
                r.max_eigenvalue = std::nan("");
                r.residual = residual;
                r.ground_vector = std::vector<Complex>(v.data(), v.data() + v.size());
                return r;
            }
        }
    }
    throw std::runtime_error("power iteration did not converge");
}

} // namespace flowq
