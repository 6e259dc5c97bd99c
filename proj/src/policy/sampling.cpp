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

#include "flowq/policy/sampling.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace flowq {

std::size_t sample_action(const std::vector<double> &logprobs, const std::vector<bool> &mask,
                          Rng &rng, double epsilon)
{
    if (logprobs.size() != mask.size()) {
        throw std::invalid_argument("sample_action: logprobs and mask sizes differ");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("sample_action: epsilon must be in [0,1]");
    }
    std::vector<std::size_t> valid;
    for (std::size_t a = 0; a < mask.size(); ++a) {
        if (mask[a]) {
            valid.push_back(a);
        }
    }
    if (valid.empty()) {
        throw std::invalid_argument("sample_action: no valid action");
    }
    if (valid.size() == 1) {
        return valid.front();
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (epsilon > 0.0 && unit(rng) < epsilon) {
        std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
        return valid[pick(rng)];
    }
    const double u = unit(rng);
    double acc = 0.0;
    for (std::size_t a : valid) {
        acc += std::exp(logprobs[a]);
        if (u < acc) {
            return a;
        }
    }
    // Rounding left a sliver of mass above the last cumulative sum.
    for (auto it = valid.rbegin(); it != valid.rend(); ++it) {
        if (std::isfinite(logprobs[*it])) {
            return *it;
        }
    }
    return valid.back();
}

double Rollout::sum_logprob() const
{
    return std::accumulate(logprobs.begin(), logprobs.end(), 0.0);
}

std::vector<int> trajectory_tokens(const ActionSpace &space, const std::vector<int> &actions)
{
    if (actions.empty()) {
        throw std::invalid_argument("trajectory_tokens: empty trajectory");
    }
    std::vector<int> tokens;
    tokens.reserve(actions.size());
    tokens.push_back(space.bos_token());
    tokens.insert(tokens.end(), actions.begin(), actions.end() - 1);
    return tokens;
}

Rollout sample_rollout(const TransformerPolicy &policy, const ActionSpace &space,
                       const Budgets &budgets, Rng &rng, double epsilon)
{
    Rollout r;
    MdpState s = MdpState::initial(space.n_qubits());
    std::vector<int> tokens = encode(space, s);
    while (!s.stopped) {
        std::vector<bool> m = mask(space, s, budgets);
        const std::vector<double> lp = forward_logprobs(policy, tokens, m);
        const std::size_t a = sample_action(lp, m, rng, epsilon);
        r.actions.push_back(static_cast<int>(a));
        r.logprobs.push_back(lp[a]);
        r.masks.push_back(std::move(m));
        s = step(space, s, a, budgets);
        tokens.push_back(static_cast<int>(a));
    }
    r.terminal = std::move(s);
    return r;
}

Rollout uniform_rollout(const ActionSpace &space, const Budgets &budgets, Rng &rng)
{
    Rollout r;
    MdpState s = MdpState::initial(space.n_qubits());
    while (!s.stopped) {
        std::vector<bool> m = mask(space, s, budgets);
        std::vector<std::size_t> valid;
        for (std::size_t a = 0; a < m.size(); ++a) {
            if (m[a]) {
                valid.push_back(a);
            }
        }
        std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
        const std::size_t a = valid[pick(rng)];
        r.actions.push_back(static_cast<int>(a));
        r.logprobs.push_back(-std::log(static_cast<double>(valid.size())));
        r.masks.push_back(std::move(m));
        s = step(space, s, a, budgets);
    }
    r.terminal = std::move(s);
    return r;
}

double trajectory_logprob(const TransformerPolicy &policy, const ActionSpace &space,
                          const std::vector<int> &actions,
                          const std::vector<std::vector<bool>> &masks, ForwardCache *cache,
                          RowMatrix *dlogits)
{
    if (actions.size() != masks.size()) {
        throw std::invalid_argument("trajectory_logprob: one mask per action required");
    }
    const RowMatrix logits = policy.forward(trajectory_tokens(space, actions), cache);
    if (dlogits) {
        *dlogits = RowMatrix::Zero(logits.rows(), logits.cols());
    }
    double total = 0.0;
    for (std::size_t t = 0; t < actions.size(); ++t) {
        const auto row = static_cast<Eigen::Index>(t);
        const Eigen::RowVectorXd l = logits.row(row);
        const std::vector<double> lp = masked_log_softmax(
            std::span<const double>(l.data(), static_cast<std::size_t>(l.size())), masks[t]);
        const auto a = static_cast<std::size_t>(actions[t]);
        if (!masks[t][a]) {
            throw std::invalid_argument("trajectory_logprob: recorded action is masked");
        }
        total += lp[a];
        if (dlogits) {
            for (std::size_t k = 0; k < lp.size(); ++k) {
                if (masks[t][k]) {
                    (*dlogits)(row, static_cast<Eigen::Index>(k)) = -std::exp(lp[k]);
                }
            }
            (*dlogits)(row, static_cast<Eigen::Index>(a)) += 1.0;
        }
    }
    return total;
}

} // namespace flowq
