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

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "flowq/common/rng.hpp"

namespace flowq {

struct PolicyConfig {
    int n_layers = 2;
    int n_heads = 4;
    int embed_dim = 64;
    int hidden_dim = 256;
    /// Gate tokens plus BOS; equals action_count with the shared Stop/BOS slot.
    int vocab_size = 0;
    /// Longest token sequence: gate budget + 1.
    int max_seq_len = 0;
    int action_count = 0;

    /// Throws std::invalid_argument on non-positive sizes, embed_dim not
    /// divisible by n_heads, or vocab_size != action_count.
    void validate() const;
    /// Layer sizes used at full scale: 3 layers, 8 heads, embed 512, hidden 2048.
    static PolicyConfig full_scale(int action_count, int max_seq_len);
    static PolicyConfig desk_scale(int action_count, int max_seq_len);

    bool operator==(const PolicyConfig &) const = default;
};

void to_json(nlohmann::json &j, const PolicyConfig &c);
void from_json(const nlohmann::json &j, PolicyConfig &c);

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Activations recorded by a forward pass, consumed by the backward pass.
struct ForwardCache {
    struct Layer {
        RowMatrix x_in;
        RowMatrix ln1_hat;
        Eigen::VectorXd ln1_rstd;
        RowMatrix a;
        RowMatrix q, k, v;
        std::vector<RowMatrix> probs;
        RowMatrix o;
        RowMatrix x1;
        RowMatrix ln2_hat;
        Eigen::VectorXd ln2_rstd;
        RowMatrix b;
        RowMatrix h_pre;
        RowMatrix h_act;
    };
    std::vector<int> tokens;
    std::vector<Layer> layers;
    RowMatrix lnf_hat;
    Eigen::VectorXd lnf_rstd;
    RowMatrix y;
};

/**
 * Pre-LayerNorm causal transformer over gate tokens with learned token and
 * position embeddings, tanh-approximated GELU feed-forward blocks and a linear
 * action head. Every position t yields the action logits for the state whose
 * encoding is tokens[0..t], so one pass scores a whole trajectory.
 *
 * All weights live in one flat parameter vector; log Z is a separate scalar.
 */
class TransformerPolicy {
  public:
    TransformerPolicy() = default;
    /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases, unit
    /// LayerNorm gains, log Z = 0.
    TransformerPolicy(const PolicyConfig &config, Rng &rng);
    /// Adopts existing parameters; throws on a size mismatch.
    TransformerPolicy(const PolicyConfig &config, std::vector<double> params, double log_z);

    const PolicyConfig &config() const { return config_; }
    static std::size_t param_count(const PolicyConfig &config);
    std::size_t size() const { return params_.size(); }
    std::vector<double> &params() { return params_; }
    const std::vector<double> &params() const { return params_; }
    double log_z() const { return log_z_; }
    double &log_z() { return log_z_; }

    /// Logits for every position (T x action_count). Records activations in
    /// `cache` when non-null. Throws std::invalid_argument for an empty or
    /// over-long sequence or an out-of-range token.
    RowMatrix forward(const std::vector<int> &tokens, ForwardCache *cache = nullptr) const;

    /// Accumulates dLoss/dparams into `grad` (size() entries) given
    /// dLoss/dlogits for every position.
    void backward(const ForwardCache &cache, const RowMatrix &dlogits, std::span<double> grad) const;

  private:
    struct Offsets;
    PolicyConfig config_;
    std::vector<double> params_;
    double log_z_ = 0.0;
};

/// Log-softmax over the valid entries; masked entries are -infinity. Throws
/// std::invalid_argument when no entry is valid or sizes differ.
std::vector<double> masked_log_softmax(std::span<const double> logits, const std::vector<bool> &mask);

/// Log-probabilities of the next action for the state encoded by `tokens`.
std::vector<double> forward_logprobs(const TransformerPolicy &policy, const std::vector<int> &tokens,
                                     const std::vector<bool> &mask);

} // namespace flowq
