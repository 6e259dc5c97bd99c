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

#include "flowq/rewards/classify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flowq {

Encoding encoding_from_name(std::string_view name)
{
    if (name == "angle") {
        return Encoding::Angle;
    }
    if (name == "dense") {
        return Encoding::Dense;
    }
    throw std::invalid_argument("unknown encoding '" + std::string(name) +
                                "' (expected angle or dense)");
}

std::string_view encoding_name(Encoding e)
{
    return e == Encoding::Angle ? "angle" : "dense";
}

int encoding_qubits(Encoding e, int n_features)
{
    if (n_features < 1) {
        throw std::invalid_argument("encoding: need at least one feature");
    }
    if (e == Encoding::Angle) {
        return n_features;
    }
    if (n_features % 2 != 0) {
        throw std::invalid_argument("dense encoding needs an even feature count");
    }
    return n_features / 2;
}

StateVector encode_features(const std::vector<double> &x, Encoding e)
{
    const int n = encoding_qubits(e, static_cast<int>(x.size()));
    StateVector psi = StateVector::zero(n);
    for (int q = 0; q < n; ++q) {
        if (e == Encoding::Angle) {
            psi.apply_ry(q, x[static_cast<std::size_t>(q)]);
        } else {
            psi.apply_rx(q, x[static_cast<std::size_t>(q)]);
            psi.apply_ry(q, x[static_cast<std::size_t>(q + n)]);
        }
    }
    return psi;
}

double parity_p1(const StateVector &state)
{
    double odd = 0.0;
    const auto &amp = state.amplitudes();
    for (std::size_t j = 0; j < amp.size(); ++j) {
        if (std::popcount(j) & 1U) {
            odd += std::norm(amp[j]);
        }
    }
    return odd;
}

namespace {

double floored(double p)
{
    return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

void check_inputs(const CircuitArch &arch, const Dataset &data, Encoding encoding)
{
    if (data.size() == 0) {
        throw std::invalid_argument("classify: empty dataset");
    }
    data.validate();
    if (encoding_qubits(encoding, data.dim()) != arch.n_qubits()) {
        throw std::invalid_argument("classify: circuit qubit count does not match the encoding");
    }
}

} // namespace

ClassifyResult classify_loss(const CircuitArch &arch, const std::vector<double> &theta,
                             const Dataset &data, Encoding encoding)
{
    check_inputs(arch, data, encoding);
    ClassifyResult r;
    int correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double p1 =
            parity_p1(run_statevector(arch, theta, encode_features(data.features[i], encoding)));
        const int y = data.labels[i];
        r.cross_entropy -= y == 1 ? std::log(floored(p1)) : std::log(floored(1.0 - p1));
        correct += static_cast<int>((p1 > 0.5 ? 1 : 0) == y);
    }
    r.cross_entropy /= static_cast<double>(data.size());
    r.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
    return r;
}

double classify_loss_grad(const CircuitArch &arch, std::span<const double> theta,
                          const Dataset &data, Encoding encoding, std::span<double> grad,
                          std::int64_t &evals)
{
    check_inputs(arch, data, encoding);
    if (grad.size() != theta.size() || static_cast<int>(theta.size()) != arch.n_params()) {
        throw std::invalid_argument("classify_loss_grad: parameter count mismatch");
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    std::vector<double> shifted(theta.begin(), theta.end());
    const double inv_n = 1.0 / static_cast<double>(data.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const StateVector input = encode_features(data.features[i], encoding);
        const double p1 = parity_p1(run_statevector(arch, theta, input));
        ++evals;
        const int y = data.labels[i];
        const double p = y == 1 ? p1 : 1.0 - p1;
        loss -= std::log(floored(p)) * inv_n;
        if (p <= kProbabilityFloor || p >= 1.0 - kProbabilityFloor) {
            continue;
        }
        // dL_i/dp1 for the unfloored branch.
        const double dl_dp1 = (y == 1 ? -1.0 / p1 : 1.0 / (1.0 - p1)) * inv_n;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            shifted[j] = theta[j] + std::numbers::pi / 2;
            const double plus = parity_p1(run_statevector(arch, shifted, input));
            shifted[j] = theta[j] - std::numbers::pi / 2;
            const double minus = parity_p1(run_statevector(arch, shifted, input));
            shifted[j] = theta[j];
            grad[j] += dl_dp1 * 0.5 * (plus - minus);
        }
        evals += 2 * static_cast<std::int64_t>(theta.size());
    }
    return loss;
}

InnerLoopConfig classify_search_inner()
{
    InnerLoopConfig c;
    c.restarts = 2;
    c.max_steps = 100;
    return c;
}

ClassifyTask::ClassifyTask(DatasetSplit data, Encoding encoding, InnerLoopConfig search_inner,
                           InnerLoopConfig final_inner)
    : data_(std::move(data)), encoding_(encoding), search_inner_(search_inner),
      final_inner_(final_inner)
{
    if (data_.train.size() == 0) {
        throw std::invalid_argument("ClassifyTask: empty training set");
    }
    data_.train.validate();
    data_.test.validate();
    if (data_.test.size() > 0 && data_.test.dim() != data_.train.dim()) {
        throw std::invalid_argument("ClassifyTask: train and test dimensions differ");
    }
    search_inner_.validate();
    final_inner_.validate();
    n_qubits_ = encoding_qubits(encoding_, data_.train.dim());
}

TaskEvaluation ClassifyTask::fit(const CircuitArch &arch, Rng &rng, const InnerLoopConfig &inner,
                                 const std::optional<std::vector<double>> &warm) const
{
    TaskEvaluation ev;
    const Objective objective = [&](std::span<const double> theta, std::span<double> grad) {
        return classify_loss_grad(arch, theta, data_.train, encoding_, grad, ev.quantum_evals);
    };
    InnerLoopResult best = minimize(arch.n_params(), objective, inner, rng, warm);
    ev.loss = best.value;
    ev.theta = std::move(best.theta);
    return ev;
}

TaskEvaluation ClassifyTask::evaluate(const CircuitArch &arch, Rng &rng) const
{
    return fit(arch, rng, search_inner_, std::nullopt);
}

TaskEvaluation ClassifyTask::train_final(const CircuitArch &arch, Rng &rng,
                                         const std::optional<std::vector<double>> &theta) const
{
    return fit(arch, rng, final_inner_, theta);
}

} // namespace flowq
