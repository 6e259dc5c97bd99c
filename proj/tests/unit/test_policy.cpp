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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "flowq/mdp/mdp.hpp"
#include "flowq/policy/checkpoint.hpp"
#include "flowq/policy/sampling.hpp"
#include "flowq/policy/transformer.hpp"
#include "rule_checker.hpp"

using namespace flowq;
using Catch::Approx;

namespace {

PolicyConfig small_config(const ActionSpace &space, int max_gates)
{
    PolicyConfig c = PolicyConfig::desk_scale(space.vocab_size(), max_gates + 1);
    c.embed_dim = 16;
    c.hidden_dim = 32;
    c.n_heads = 2;
    return c;
}

struct Batch {
    std::vector<Rollout> rollouts;
    std::vector<double> log_rewards;
};

double tb_objective(const TransformerPolicy &p, const ActionSpace &space, const Batch &b)
{
    double total = 0;
    for (std::size_t i = 0; i < b.rollouts.size(); ++i) {
        const double lp = trajectory_logprob(p, space, b.rollouts[i].actions, b.rollouts[i].masks);
        const double r = p.log_z() + lp - b.log_rewards[i];
        total += r * r;
    }
    return total / static_cast<double>(b.rollouts.size());
}

/// Analytic gradient of tb_objective; the last entry is d/d log Z.
std::vector<double> tb_gradient(const TransformerPolicy &p, const ActionSpace &space, const Batch &b)
{
    std::vector<double> grad(p.size() + 1, 0.0);
    const double inv_n = 1.0 / static_cast<double>(b.rollouts.size());
    for (std::size_t i = 0; i < b.rollouts.size(); ++i) {
        ForwardCache cache;
        RowMatrix dlogits;
        const double lp = trajectory_logprob(p, space, b.rollouts[i].actions, b.rollouts[i].masks, &cache, &dlogits);
        const double r = p.log_z() + lp - b.log_rewards[i];
        dlogits *= 2 * r * inv_n;
        p.backward(cache, dlogits, std::span<double>(grad.data(), p.size()));
        grad.back() += 2 * r * inv_n;
    }
    return grad;
}

std::string temp_path(const std::string &name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("policy config validation and json")
{
    const ActionSpace s = ActionSpace::full(2);
    PolicyConfig c = small_config(s, 8);
    REQUIRE_NOTHROW(c.validate());
    nlohmann::json j = c;
    REQUIRE(j.get<PolicyConfig>() == c);
    PolicyConfig bad = c;
    bad.n_heads = 3;
    REQUIRE_THROWS(bad.validate());
    bad = c;
    bad.vocab_size = c.action_count + 1;
    REQUIRE_THROWS(bad.validate());
    const PolicyConfig big = PolicyConfig::full_scale(25, 41);
    REQUIRE(big.n_layers == 3);
    REQUIRE(big.n_heads == 8);
    REQUIRE(big.embed_dim == 512);
    REQUIRE(big.hidden_dim == 2048);
}

TEST_CASE("forward log-probabilities are normalized, masked and deterministic")
{
    const ActionSpace s = ActionSpace::full(3);
    Rng rng(51);
    const TransformerPolicy p(small_config(s, 10), rng);
    Rng roll(52);
    for (int t = 0; t < 30; ++t) {
        const Rollout r = uniform_rollout(s, Budgets{10, 6}, roll);
        MdpState st = MdpState::initial(3);
        for (std::size_t k = 0; k < r.actions.size(); ++k) {
            const auto tokens = encode(s, st);
            const auto lp = forward_logprobs(p, tokens, r.masks[k]);
            double z = 0;
            for (std::size_t a = 0; a < lp.size(); ++a) {
                if (r.masks[k][a]) {
                    z += std::exp(lp[a]);
                } else {
                    REQUIRE(std::exp(lp[a]) == 0.0);
                }
            }
            REQUIRE(z == Approx(1.0).margin(1e-6));
            REQUIRE(forward_logprobs(p, tokens, r.masks[k]) == lp);
            st = step(s, st, static_cast<std::size_t>(r.actions[k]), Budgets{10, 6});
        }
    }
    REQUIRE_THROWS(forward_logprobs(p, {s.bos_token()}, std::vector<bool>(s.size(), false)));
    REQUIRE_THROWS(p.forward(std::vector<int>(12, 0)));
    REQUIRE_THROWS(p.forward({}));
    REQUIRE_THROWS(p.forward({99}));
}

TEST_CASE("positional embeddings make gate order visible")
{
    const ActionSpace s = ActionSpace::full(2);
    Rng rng(53);
    const TransformerPolicy p(small_config(s, 8), rng);
    const RowMatrix a = p.forward({s.bos_token(), 0, 3});
    const RowMatrix b = p.forward({s.bos_token(), 3, 0});
    REQUIRE((a.row(2) - b.row(2)).norm() > 1e-8);
}

TEST_CASE("initialization is seed deterministic")
{
    const ActionSpace s = ActionSpace::full(2);
    Rng a(54), b(54), c(55);
    const PolicyConfig cfg = small_config(s, 8);
    REQUIRE(TransformerPolicy(cfg, a).params() == TransformerPolicy(cfg, b).params());
    REQUIRE(TransformerPolicy(cfg, c).params() != TransformerPolicy(cfg, a).params());
    Rng d(56);
    REQUIRE(TransformerPolicy(cfg, d).log_z() == 0.0);
    REQUIRE_THROWS(TransformerPolicy(cfg, std::vector<double>(3, 0.0), 0.0));
}

TEST_CASE("initial action distribution is close to uniform")
{
    const ActionSpace s = ActionSpace::full(4);
    Rng rng(57);
    const TransformerPolicy p(PolicyConfig::desk_scale(s.vocab_size(), 41), rng);
    const auto m = mask(s, MdpState::initial(4), Budgets{});
    const auto lp = forward_logprobs(p, {s.bos_token()}, m);
    std::map<std::size_t, int> counts;
    Rng draw(58);
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        ++counts[sample_action(lp, m, draw, 0.0)];
    }
    double h = 0;
    for (const auto &[a, c] : counts) {
        const double q = static_cast<double>(c) / n;
        h -= q * std::log(q);
    }
    const double h_uniform = std::log(12.0);
    REQUIRE(std::abs(h - h_uniform) <= 0.1 * h_uniform);
}

TEST_CASE("sample_action edge cases")
{
    Rng rng(59);
    const std::vector<bool> one = {false, true, false};
    const std::vector<double> lp_one = {-INFINITY, 0.0, -INFINITY};
    for (int i = 0; i < 100; ++i) {
        REQUIRE(sample_action(lp_one, one, rng, 0.3) == 1);
    }

    const std::vector<bool> m = {true, false, true, true};
    const std::vector<double> peaked = masked_log_softmax(std::vector<double>{20.0, 50.0, 0.0, 0.0}, m);
    int hits = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto a = sample_action(peaked, m, rng, 0.0);
        REQUIRE(a != 1);
        hits += a == 0 ? 1 : 0;
    }
    REQUIRE(hits >= 9990);

    int counts[4] = {0, 0, 0, 0};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        ++counts[sample_action(peaked, m, rng, 1.0)];
    }
    REQUIRE(counts[1] == 0);
    const double sd = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
    for (int a : {0, 2, 3}) {
        REQUIRE(std::abs(counts[a] - n / 3.0) <= 3 * sd);
    }
    REQUIRE_THROWS(sample_action(peaked, std::vector<bool>(4, false), rng, 0.0));
    REQUIRE_THROWS(sample_action(peaked, m, rng, 1.5));
}

TEST_CASE("sampled rollouts are mask compliant and replayable")
{
    const ActionSpace s = ActionSpace::full(3);
    Rng rng(60);
    const TransformerPolicy p(small_config(s, 10), rng);
    const Budgets b{10, 6};
    for (int t = 0; t < 50; ++t) {
        Rng r(1000 + t);
        const Rollout ro = sample_rollout(p, s, b, r, 0.1);
        REQUIRE(ro.terminal.stopped);
        REQUIRE(checker::first_violation(ro.terminal.arch.gates()).empty());
        REQUIRE(replay(s, ro.actions, b) == ro.terminal);
        REQUIRE(ro.actions.back() == static_cast<int>(s.stop_index()));
        REQUIRE(ro.logprobs.size() == ro.actions.size());
        REQUIRE(trajectory_logprob(p, s, ro.actions, ro.masks) == Approx(ro.sum_logprob()).margin(1e-10));
        Rng again(1000 + t);
        REQUIRE(sample_rollout(p, s, b, again, 0.1).actions == ro.actions);
    }
    REQUIRE(trajectory_tokens(s, {0, 3, static_cast<int>(s.stop_index())}) ==
            std::vector<int>{s.bos_token(), 0, 3});
}

TEST_CASE("masked logits receive no gradient")
{
    const ActionSpace s = ActionSpace::full(2);
    Rng rng(61);
    const TransformerPolicy p(small_config(s, 6), rng);
    Rng r(62);
    const Rollout ro = uniform_rollout(s, Budgets{6, 4}, r);
    ForwardCache cache;
    RowMatrix dlogits;
    trajectory_logprob(p, s, ro.actions, ro.masks, &cache, &dlogits);
    for (std::size_t t = 0; t < ro.masks.size(); ++t) {
        double row = 0;
        for (std::size_t a = 0; a < s.size(); ++a) {
            const double d = dlogits(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(a));
            if (!ro.masks[t][a]) {
                REQUIRE(d == 0.0);
            }
            row += d;
        }
        REQUIRE(std::abs(row) < 1e-12);
    }
}

TEST_CASE("log Z gradient of the balance loss on one trajectory")
{
    const ActionSpace s = ActionSpace::full(2);
    Rng rng(63);
    TransformerPolicy p(small_config(s, 6), rng);
    p.log_z() = 0.7;
    Rng r(64);
    Batch b{{uniform_rollout(s, Budgets{6, 4}, r)}, {-1.3}};
    const auto g = tb_gradient(p, s, b);
    const double lp = trajectory_logprob(p, s, b.rollouts[0].actions, b.rollouts[0].masks);
    REQUIRE(g.back() == Approx(2 * (0.7 + lp + 1.3)).epsilon(1e-12));
    for (double v : g) {
        REQUIRE(std::isfinite(v));
    }
}

TEST_CASE("analytic and numeric directional derivatives agree on 20 seeds")
{
    const ActionSpace s = ActionSpace::full(3);
    for (int seed = 0; seed < 20; ++seed) {
        Rng rng(700 + seed);
        TransformerPolicy p(small_config(s, 8), rng);
        p.log_z() = std::uniform_real_distribution<double>(-1, 1)(rng);
        Batch b;
        for (int k = 0; k < 3; ++k) {
            b.rollouts.push_back(sample_rollout(p, s, Budgets{8, 5}, rng, 0.5));
            b.log_rewards.push_back(std::uniform_real_distribution<double>(-3, 0)(rng));
        }
        const auto g = tb_gradient(p, s, b);
        std::vector<double> v(g.size());
        std::normal_distribution<double> nd;
        for (auto &x : v) {
            x = nd(rng);
        }
        double analytic = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            analytic += g[i] * v[i];
        }
        const double h = 1e-4;
        auto shifted = [&](double sign) {
            TransformerPolicy q = p;
            for (std::size_t i = 0; i < q.size(); ++i) {
                q.params()[i] += sign * h * v[i];
            }
            q.log_z() += sign * h * v.back();
            return tb_objective(q, s, b);
        };
        const double numeric = (shifted(1) - shifted(-1)) / (2 * h);
        INFO("seed " << seed << " analytic " << analytic << " numeric " << numeric);
        REQUIRE(std::abs(analytic - numeric) <= 1e-4 * std::max(std::abs(analytic), 1e-8));
    }
}

TEST_CASE("checkpoint round trip is bit exact")
{
    const ActionSpace s = ActionSpace::full(2);
    Rng rng(65);
    Checkpoint c{TransformerPolicy(small_config(s, 6), rng), AdamState(0), AdamState(1), {{"task", "toy"}}};
    c.policy.log_z() = -0.123456789;
    c.adam = AdamState(c.policy.size());
    std::vector<double> g(c.policy.size(), 0.01);
    adam_step(c.policy.params(), g, c.adam, 1e-3);
    const std::string path = temp_path("flowq_policy_test.ckpt");
    save_checkpoint(path, c);
    const Checkpoint back = load_checkpoint(path);
    REQUIRE(back.policy.params() == c.policy.params());
    REQUIRE(back.policy.log_z() == c.policy.log_z());
    REQUIRE(back.policy.config() == c.policy.config());
    REQUIRE(back.adam.m == c.adam.m);
    REQUIRE(back.adam.v == c.adam.v);
    REQUIRE(back.adam.step == c.adam.step);
    REQUIRE(back.meta == c.meta);

    {
        std::ofstream bad(path, std::ios::binary);
        bad << "NOPE";
    }
    REQUIRE_THROWS_AS(load_checkpoint(path), std::runtime_error);
    std::filesystem::remove(path);
    REQUIRE_THROWS_AS(load_checkpoint(path), std::runtime_error);
}
