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

#include "flowq/policy/transformer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace flowq {

void PolicyConfig::validate() const
{
    if (n_layers < 1 || n_heads < 1 || embed_dim < 1 || hidden_dim < 1 || vocab_size < 1 ||
        max_seq_len < 1 || action_count < 2) {
        throw std::invalid_argument("policy config: all sizes must be positive "
                                    "(and at least two actions)");
    }
    if (embed_dim % n_heads != 0) {
        throw std::invalid_argument("policy config: embed_dim " + std::to_string(embed_dim) +
                                    " is not divisible by n_heads " + std::to_string(n_heads));
    }
    if (vocab_size != action_count) {
        throw std::invalid_argument("policy config: vocab_size must equal action_count "
                                    "(gate tokens plus the shared Stop/BOS slot)");
    }
}

PolicyConfig PolicyConfig::full_scale(int action_count, int max_seq_len)
{
    return {3, 8, 512, 2048, action_count, max_seq_len, action_count};
}

PolicyConfig PolicyConfig::desk_scale(int action_count, int max_seq_len)
{
    return {2, 4, 64, 256, action_count, max_seq_len, action_count};
}

void to_json(nlohmann::json &j, const PolicyConfig &c)
{
    j = {{"n_layers", c.n_layers},       {"n_heads", c.n_heads},
         {"embed_dim", c.embed_dim},     {"hidden_dim", c.hidden_dim},
         {"vocab_size", c.vocab_size},   {"max_seq_len", c.max_seq_len},
         {"action_count", c.action_count}};
}

void from_json(const nlohmann::json &j, PolicyConfig &c)
{
    j.at("n_layers").get_to(c.n_layers);
    j.at("n_heads").get_to(c.n_heads);
    j.at("embed_dim").get_to(c.embed_dim);
    j.at("hidden_dim").get_to(c.hidden_dim);
    j.at("vocab_size").get_to(c.vocab_size);
    j.at("max_seq_len").get_to(c.max_seq_len);
    j.at("action_count").get_to(c.action_count);
}

namespace {

constexpr double kLnEps = 1e-5;

using Map = Eigen::Map<RowMatrix>;
using CMap = Eigen::Map<const RowMatrix>;
using VMap = Eigen::Map<Eigen::RowVectorXd>;
using CVMap = Eigen::Map<const Eigen::RowVectorXd>;

struct LayerOffsets {
    std::size_t ln1_g, ln1_b, wq, bq, wk, bk, wv, bv, wo, bo, ln2_g, ln2_b, w1, b1, w2, b2;
};

} // namespace

struct TransformerPolicy::Offsets {
    std::size_t tok, pos;
    std::vector<LayerOffsets> layers;
    std::size_t lnf_g, lnf_b, wh, bh;
    std::size_t total;

    explicit Offsets(const PolicyConfig &c)
    {
        const auto d = static_cast<std::size_t>(c.embed_dim);
        const auto h = static_cast<std::size_t>(c.hidden_dim);
        std::size_t at = 0;
        auto take = [&](std::size_t n) {
            const std::size_t o = at;
            at += n;
            return o;
        };
        tok = take(static_cast<std::size_t>(c.vocab_size) * d);
        pos = take(static_cast<std::size_t>(c.max_seq_len) * d);
        for (int l = 0; l < c.n_layers; ++l) {
            LayerOffsets L{};
            L.ln1_g = take(d);
            L.ln1_b = take(d);
            L.wq = take(d * d);
            L.bq = take(d);
            L.wk = take(d * d);
            L.bk = take(d);
            L.wv = take(d * d);
            L.bv = take(d);
            L.wo = take(d * d);
            L.bo = take(d);
            L.ln2_g = take(d);
            L.ln2_b = take(d);
            L.w1 = take(d * h);
            L.b1 = take(h);
            L.w2 = take(h * d);
            L.b2 = take(d);
            layers.push_back(L);
        }
        lnf_g = take(d);
        lnf_b = take(d);
        wh = take(d * static_cast<std::size_t>(c.action_count));
        bh = take(static_cast<std::size_t>(c.action_count));
        total = at;
    }
};

std::size_t TransformerPolicy::param_count(const PolicyConfig &config)
{
    config.validate();
    return Offsets(config).total;
}

TransformerPolicy::TransformerPolicy(const PolicyConfig &config, Rng &rng) : config_(config)
{
    config_.validate();
    const Offsets off(config_);
    params_.assign(off.total, 0.0);
    const int d = config_.embed_dim;
    const int h = config_.hidden_dim;
    auto fill = [&](std::size_t at, std::size_t n, double fan_in) {
        const double bound = 1.0 / std::sqrt(fan_in);
        std::uniform_real_distribution<double> u(-bound, bound);
        for (std::size_t i = 0; i < n; ++i) {
            params_[at + i] = u(rng);
        }
    };
    auto ones = [&](std::size_t at, std::size_t n) {
        std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(at), n, 1.0);
    };
    const auto ud = static_cast<std::size_t>(d);
    const auto uh = static_cast<std::size_t>(h);
    fill(off.tok, static_cast<std::size_t>(config_.vocab_size) * ud, config_.vocab_size);
    fill(off.pos, static_cast<std::size_t>(config_.max_seq_len) * ud, config_.max_seq_len);
    for (const auto &L : off.layers) {
        ones(L.ln1_g, ud);
        fill(L.wq, ud * ud, d);
        fill(L.wk, ud * ud, d);
        fill(L.wv, ud * ud, d);
        fill(L.wo, ud * ud, d);
        ones(L.ln2_g, ud);
        fill(L.w1, ud * uh, d);
        fill(L.w2, uh * ud, h);
    }
    ones(off.lnf_g, ud);
    fill(off.wh, ud * static_cast<std::size_t>(config_.action_count), d);
    log_z_ = 0.0;
}

TransformerPolicy::TransformerPolicy(const PolicyConfig &config, std::vector<double> params,
                                     double log_z)
    : config_(config), params_(std::move(params)), log_z_(log_z)
{
    config_.validate();
    if (params_.size() != Offsets(config_).total) {
        throw std::invalid_argument("TransformerPolicy: expected " +
                                    std::to_string(Offsets(config_).total) + " parameters, got " +
                                    std::to_string(params_.size()));
    }
}

namespace {

void layer_norm(const RowMatrix &x, const double *g, const double *b, int d, RowMatrix &hat,
                Eigen::VectorXd &rstd, RowMatrix &out)
{
    const auto T = x.rows();
    hat.resize(T, d);
    rstd.resize(T);
    out.resize(T, d);
    const CVMap gain(g, d);
    const CVMap bias(b, d);
    for (Eigen::Index t = 0; t < T; ++t) {
        const double mean = x.row(t).mean();
        const double var = (x.row(t).array() - mean).square().mean();
        rstd(t) = 1.0 / std::sqrt(var + kLnEps);
        hat.row(t) = (x.row(t).array() - mean) * rstd(t);
        out.row(t) = hat.row(t).cwiseProduct(gain) + bias;
    }
}

/// Returns dL/dx and accumulates the gain/bias gradients.
RowMatrix layer_norm_backward(const RowMatrix &dout, const RowMatrix &hat,
                              const Eigen::VectorXd &rstd, const double *g, double *dg, double *db,
                              int d)
{
    const CVMap gain(g, d);
    VMap dgain(dg, d);
    VMap dbias(db, d);
    RowMatrix dx(dout.rows(), d);
    for (Eigen::Index t = 0; t < dout.rows(); ++t) {
        dgain += dout.row(t).cwiseProduct(hat.row(t));
        dbias += dout.row(t);
        const Eigen::RowVectorXd dhat = dout.row(t).cwiseProduct(gain);
        const double m1 = dhat.mean();
        const double m2 = dhat.cwiseProduct(hat.row(t)).mean();
        dx.row(t) = rstd(t) * (dhat.array() - m1 - hat.row(t).array() * m2);
    }
    return dx;
}

constexpr double kGeluC = 0.7978845608028654; // sqrt(2/pi)
constexpr double kGeluA = 0.044715;

double gelu(double x)
{
    return 0.5 * x * (1.0 + std::tanh(kGeluC * (x + kGeluA * x * x * x)));
}

double gelu_grad(double x)
{
    const double th = std::tanh(kGeluC * (x + kGeluA * x * x * x));
    return 0.5 * (1.0 + th) +
           0.5 * x * (1.0 - th * th) * kGeluC * (1.0 + 3.0 * kGeluA * x * x);
}

} // namespace

RowMatrix TransformerPolicy::forward(const std::vector<int> &tokens, ForwardCache *cache) const
{
    const auto T = static_cast<Eigen::Index>(tokens.size());
    if (T == 0 || T > config_.max_seq_len) {
        throw std::invalid_argument("policy forward: sequence length " + std::to_string(T) +
                                    " outside 1.." + std::to_string(config_.max_seq_len));
    }
    const int d = config_.embed_dim;
    const int h = config_.hidden_dim;
    const int nh = config_.n_heads;
    const int dh = d / nh;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
    const Offsets off(config_);
    const double *p = params_.data();

    RowMatrix x(T, d);
    const CMap tok(p + off.tok, config_.vocab_size, d);
    const CMap pos(p + off.pos, config_.max_seq_len, d);
    for (Eigen::Index t = 0; t < T; ++t) {
        const int id = tokens[static_cast<std::size_t>(t)];
        if (id < 0 || id >= config_.vocab_size) {
            throw std::invalid_argument("policy forward: token " + std::to_string(id) +
                                        " out of range");
        }
        x.row(t) = tok.row(id) + pos.row(t);
    }

    ForwardCache local;
    ForwardCache &c = cache ? *cache : local;
    c.tokens = tokens;
    c.layers.assign(static_cast<std::size_t>(config_.n_layers), {});

    for (int l = 0; l < config_.n_layers; ++l) {
        const LayerOffsets &L = off.layers[static_cast<std::size_t>(l)];
        ForwardCache::Layer &C = c.layers[static_cast<std::size_t>(l)];
        C.x_in = x;
        layer_norm(x, p + L.ln1_g, p + L.ln1_b, d, C.ln1_hat, C.ln1_rstd, C.a);
        C.q = (C.a * CMap(p + L.wq, d, d)).rowwise() + CVMap(p + L.bq, d);
        C.k = (C.a * CMap(p + L.wk, d, d)).rowwise() + CVMap(p + L.bk, d);
        C.v = (C.a * CMap(p + L.wv, d, d)).rowwise() + CVMap(p + L.bv, d);
        C.o.resize(T, d);
        C.probs.assign(static_cast<std::size_t>(nh), RowMatrix());
        for (int hd = 0; hd < nh; ++hd) {
            const auto qh = C.q.middleCols(hd * dh, dh);
            const auto kh = C.k.middleCols(hd * dh, dh);
            RowMatrix s = (qh * kh.transpose()) * scale;
            RowMatrix &pr = C.probs[static_cast<std::size_t>(hd)];
            pr = RowMatrix::Zero(T, T);
            for (Eigen::Index i = 0; i < T; ++i) {
                const double mx = s.row(i).head(i + 1).maxCoeff();
                double sum = 0.0;
                for (Eigen::Index j = 0; j <= i; ++j) {
                    pr(i, j) = std::exp(s(i, j) - mx);
                    sum += pr(i, j);
                }
                pr.row(i).head(i + 1) /= sum;
            }
            C.o.middleCols(hd * dh, dh) = pr * C.v.middleCols(hd * dh, dh);
        }
        C.x1 = x + ((C.o * CMap(p + L.wo, d, d)).rowwise() + CVMap(p + L.bo, d));
        layer_norm(C.x1, p + L.ln2_g, p + L.ln2_b, d, C.ln2_hat, C.ln2_rstd, C.b);
        C.h_pre = (C.b * CMap(p + L.w1, d, h)).rowwise() + CVMap(p + L.b1, h);
        C.h_act = C.h_pre.unaryExpr([](double v) { return gelu(v); });
        x = C.x1 + ((C.h_act * CMap(p + L.w2, h, d)).rowwise() + CVMap(p + L.b2, d));
    }
    layer_norm(x, p + off.lnf_g, p + off.lnf_b, d, c.lnf_hat, c.lnf_rstd, c.y);
    return (c.y * CMap(p + off.wh, d, config_.action_count)).rowwise() +
           CVMap(p + off.bh, config_.action_count);
}

void TransformerPolicy::backward(const ForwardCache &c, const RowMatrix &dlogits,
                                 std::span<double> grad) const
{
    if (grad.size() != params_.size()) {
        throw std::invalid_argument("policy backward: gradient buffer has the wrong size");
    }
    const auto T = static_cast<Eigen::Index>(c.tokens.size());
    if (dlogits.rows() != T || dlogits.cols() != config_.action_count ||
        c.layers.size() != static_cast<std::size_t>(config_.n_layers)) {
        throw std::invalid_argument("policy backward: cache and upstream gradient disagree");
    }
    const int d = config_.embed_dim;
    const int h = config_.hidden_dim;
    const int nh = config_.n_heads;
    const int dh = d / nh;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
    const Offsets off(config_);
    const double *p = params_.data();
    double *g = grad.data();

    Map(g + off.wh, d, config_.action_count).noalias() += c.y.transpose() * dlogits;
    VMap(g + off.bh, config_.action_count) += dlogits.colwise().sum();
    RowMatrix dy = dlogits * CMap(p + off.wh, d, config_.action_count).transpose();
    RowMatrix dx = layer_norm_backward(dy, c.lnf_hat, c.lnf_rstd, p + off.lnf_g, g + off.lnf_g,
                                       g + off.lnf_b, d);

    for (int l = config_.n_layers - 1; l >= 0; --l) {
        const LayerOffsets &L = off.layers[static_cast<std::size_t>(l)];
        const ForwardCache::Layer &C = c.layers[static_cast<std::size_t>(l)];

        // Feed-forward block: x2 = x1 + W2 gelu(W1 LN2(x1)).
        Map(g + L.w2, h, d).noalias() += C.h_act.transpose() * dx;
        VMap(g + L.b2, d) += dx.colwise().sum();
        RowMatrix dh_act = dx * CMap(p + L.w2, h, d).transpose();
        RowMatrix dh_pre = dh_act.cwiseProduct(C.h_pre.unaryExpr([](double v) { return gelu_grad(v); }));
        Map(g + L.w1, d, h).noalias() += C.b.transpose() * dh_pre;
        VMap(g + L.b1, h) += dh_pre.colwise().sum();
        RowMatrix db = dh_pre * CMap(p + L.w1, d, h).transpose();
        RowMatrix dx1 = dx + layer_norm_backward(db, C.ln2_hat, C.ln2_rstd, p + L.ln2_g,
                                                 g + L.ln2_g, g + L.ln2_b, d);

        // Attention block: x1 = x + Wo attn(LN1(x)).
        Map(g + L.wo, d, d).noalias() += C.o.transpose() * dx1;
        VMap(g + L.bo, d) += dx1.colwise().sum();
        RowMatrix d_o = dx1 * CMap(p + L.wo, d, d).transpose();
        RowMatrix dq(T, d);
        RowMatrix dk(T, d);
        RowMatrix dv(T, d);
        for (int hd = 0; hd < nh; ++hd) {
            const RowMatrix &pr = C.probs[static_cast<std::size_t>(hd)];
            const auto doh = d_o.middleCols(hd * dh, dh);
            RowMatrix dp = doh * C.v.middleCols(hd * dh, dh).transpose();
            dv.middleCols(hd * dh, dh) = pr.transpose() * doh;
            RowMatrix ds(T, T);
            for (Eigen::Index i = 0; i < T; ++i) {
                const double dot = dp.row(i).dot(pr.row(i));
                ds.row(i) = pr.row(i).cwiseProduct((dp.row(i).array() - dot).matrix());
            }
            ds *= scale;
            dq.middleCols(hd * dh, dh) = ds * C.k.middleCols(hd * dh, dh);
            dk.middleCols(hd * dh, dh) = ds.transpose() * C.q.middleCols(hd * dh, dh);
        }
        Map(g + L.wq, d, d).noalias() += C.a.transpose() * dq;
        Map(g + L.wk, d, d).noalias() += C.a.transpose() * dk;
        Map(g + L.wv, d, d).noalias() += C.a.transpose() * dv;
        VMap(g + L.bq, d) += dq.colwise().sum();
        VMap(g + L.bk, d) += dk.colwise().sum();
        VMap(g + L.bv, d) += dv.colwise().sum();
        RowMatrix da = dq * CMap(p + L.wq, d, d).transpose() +
                       dk * CMap(p + L.wk, d, d).transpose() +
                       dv * CMap(p + L.wv, d, d).transpose();
        dx = dx1 + layer_norm_backward(da, C.ln1_hat, C.ln1_rstd, p + L.ln1_g, g + L.ln1_g,
                                       g + L.ln1_b, d);
    }

    Map dtok(g + off.tok, config_.vocab_size, d);
    Map dpos(g + off.pos, config_.max_seq_len, d);
    for (Eigen::Index t = 0; t < T; ++t) {
        dtok.row(c.tokens[static_cast<std::size_t>(t)]) += dx.row(t);
        dpos.row(t) += dx.row(t);
    }
}

std::vector<double> masked_log_softmax(std::span<const double> logits, const std::vector<bool> &mask)
{
    if (logits.size() != mask.size()) {
        throw std::invalid_argument("masked_log_softmax: logits and mask sizes differ");
    }
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < logits.size(); ++a) {
        if (mask[a]) {
            mx = std::max(mx, logits[a]);
        }
    }
    if (mx == -std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("masked_log_softmax: no valid action");
    }
    double sum = 0.0;
    for (std::size_t a = 0; a < logits.size(); ++a) {
        if (mask[a]) {
            sum += std::exp(logits[a] - mx);
        }
    }
    const double lse = mx + std::log(sum);
    std::vector<double> out(logits.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < logits.size(); ++a) {
        if (mask[a]) {
            out[a] = logits[a] - lse;
        }
    }
    return out;
}

std::vector<double> forward_logprobs(const TransformerPolicy &policy, const std::vector<int> &tokens,
                                     const std::vector<bool> &mask)
{
    if (static_cast<int>(mask.size()) != policy.config().action_count) {
        throw std::invalid_argument("forward_logprobs: mask size differs from the action count");
    }
    const RowMatrix logits = policy.forward(tokens);
    const Eigen::RowVectorXd last = logits.row(logits.rows() - 1);
    return masked_log_softmax(std::span<const double>(last.data(), static_cast<std::size_t>(last.size())),
                              mask);
}

} // namespace flowq
