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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "flowq/qsim/pauli.hpp"
#include "flowq/qsim/statevector.hpp"

namespace flowq {

inline constexpr int kMaxOracleQubits = 10;

struct SpectrumResult {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    std::optional<std::vector<Complex>> ground_vector;
    /// ||H v - lambda_min v|| for the returned ground vector.
    double residual = 0.0;
};

/// Dense 2^n x 2^n matrix of the observable in the qsim basis ordering.
Eigen::MatrixXcd dense_matrix(const Observable &obs);

/// Extremal eigenvalues from a full Hermitian eigendecomposition. Throws
/// std::invalid_argument above kMaxOracleQubits qubits.
SpectrumResult exact_extremes(const Observable &obs, bool with_vector = true);

/// Lowest eigenvalue by shifted power iteration on (s I - H) with
/// s = sum |c_k|; stops once the residual falls below `tol`. Throws
/// std::runtime_error if `max_iters` is reached first.
SpectrumResult power_iteration_min(const Observable &obs, double tol = 1e-10,
                                   int max_iters = 2'000'000);

} // namespace flowq
