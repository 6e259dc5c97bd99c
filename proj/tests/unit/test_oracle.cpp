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
#include <functional>
#include <set>
#include <sstream>

#include "flowq/oracle/enumerate.hpp"
#include "flowq/oracle/graph.hpp"
#include "flowq/oracle/maxcut.hpp"
#include "flowq/oracle/spectrum.hpp"
#include "flowq/qsim/statevector.hpp"
#include "rule_checker.hpp"

using namespace flowq;
using Catch::Approx;

static const ArchReward kToy = [](const CircuitArch &a) { return toy_reward(a); };

namespace {

Graph complete(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            e.emplace_back(u, v);
        }
    }
    return Graph(n, e);
}

// Independent count of rotation-only terminal lists: a list is valid iff
// no qubit receives two rotations in a row, i.e. each qubit gets at most one
// rotation overall (no CNOTs reset the history).
long rotation_only_count(int n, int kinds, int budget)
{
    std::function<long(std::vector<bool> &, int)> rec = [&](std::vector<bool> &used, int left) -> long {
        long total = 0;
        for (int q = 0; q < n; ++q) {
            if (used[static_cast<std::size_t>(q)] || left == 0) {
                continue;
            }
            used[static_cast<std::size_t>(q)] = true;
            total += kinds * (1 + rec(used, left - 1));
            used[static_cast<std::size_t>(q)] = false;
        }
        return total;
    };
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    return rec(used, budget);
}

} // namespace

TEST_CASE("spectrum analytic cases")
{
    Observable z(1);
    z.add_term(1.0, PauliString::parse("Z"));
    const auto r = exact_extremes(z);
    REQUIRE(r.min_eigenvalue == Approx(-1.0));
    REQUIRE(r.max_eigenvalue == Approx(1.0));

    Observable cut(2);
    cut.add_term(0.5, PauliString::parse("II"));
    cut.add_term(-0.5, PauliString::parse("ZZ"));
    const auto c = exact_extremes(cut);
    REQUIRE(std::abs(c.min_eigenvalue) < 1e-12);
    REQUIRE(c.max_eigenvalue == Approx(1.0));
    REQUIRE(c.residual < 1e-8);

    REQUIRE_THROWS(exact_extremes(Observable(kMaxOracleQubits + 1)));
}

TEST_CASE("two eigen solvers agree on the shipped molecules")
{
    for (const char *name : {"/h2_4q.obs", "/lih_4q.obs"}) {
        const Observable obs = load_observable(std::string(FLOWQ_DATA_DIR) + name).observable;
        const auto exact = exact_extremes(obs);
        const auto power = power_iteration_min(obs);
        REQUIRE(std::abs(exact.min_eigenvalue - power.min_eigenvalue) < 1e-8);
        REQUIRE(exact.residual < 1e-8);
        REQUIRE(power.residual < 1e-8);
        REQUIRE(exact.min_eigenvalue <= exact.max_eigenvalue);
    }
    const Observable h2 = load_observable(std::string(FLOWQ_DATA_DIR) + "/h2_4q.obs").observable;
    REQUIRE(exact_extremes(h2).min_eigenvalue == Approx(-1.1372701746609024).margin(1e-9));
}

TEST_CASE("variational inequality on random states")
{
    std::mt19937_64 rng(31);
    const Observable h2 = load_observable(std::string(FLOWQ_DATA_DIR) + "/h2_4q.obs").observable;
    const double e0 = exact_extremes(h2, false).min_eigenvalue;
    std::normal_distribution<double> g;
    for (int t = 0; t < 100; ++t) {
        std::vector<Complex> amp(16);
        double norm = 0;
        for (auto &a : amp) {
            a = {g(rng), g(rng)};
            norm += std::norm(a);
        }
        for (auto &a : amp) {
            a /= std::sqrt(norm);
        }
        REQUIRE(expectation(StateVector(4, amp), h2) >= e0 - 1e-9);
    }
}

TEST_CASE("brute force Max-Cut")
{
    REQUIRE(brute_force_maxcut(complete(3)).value == 2);
    REQUIRE(brute_force_maxcut(complete(4)).value == 4);
    REQUIRE(brute_force_maxcut(Graph(5, {})).value == 0);
    const Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto s = brute_force_maxcut(square);
    REQUIRE(s.value == 4);
    REQUIRE(square.cut_value(s.partition) == 4);
    REQUIRE((s.partition >> 3 & 1) == 0);

    // Cross-check against a full 2^n scan on random graphs.
    Rng rng(32);
    for (int t = 0; t < 10; ++t) {
        const Graph gr = erdos_renyi(8, 0.5, rng);
        int best = 0;
        for (std::uint64_t b = 0; b < 256; ++b) {
            best = std::max(best, gr.cut_value(b));
        }
        REQUIRE(brute_force_maxcut(gr).value == best);
    }
    REQUIRE_THROWS(brute_force_maxcut(Graph(25, {})));
}

TEST_CASE("graph validation and file round trip")
{
    REQUIRE_THROWS(Graph(3, {{0, 0}}));
    REQUIRE_THROWS(Graph(3, {{0, 1}, {1, 0}}));
    REQUIRE_THROWS(Graph(3, {{0, 3}}));
    const Graph g(4, {{2, 1}, {0, 3}});
    REQUIRE(g.edges() == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});

    std::ostringstream out;
    write_graph(out, g);
    std::istringstream in(out.str());
    REQUIRE(parse_graph(in) == g);

    std::istringstream bad("vertices 3\n0 1\n1 x\n");
    try {
        parse_graph(bad);
        FAIL("expected an exception");
    } catch (const std::runtime_error &e) {
        REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("erdos renyi is seed deterministic")
{
    Rng a(5), b(5);
    REQUIRE(erdos_renyi(8, 0.5, a) == erdos_renyi(8, 0.5, b));
}

TEST_CASE("enumeration of small instances")
{
    const ActionSpace one(1, {GateKind::RX, GateKind::RY}, Connectivity{});
    const auto t1 = enumerate_terminals(one, Budgets{2, 2}, [](const CircuitArch &) { return 1.0; });
    REQUIRE(t1.size() == 2);

    const ActionSpace rot2(2, {GateKind::RX, GateKind::RY, GateKind::RZ}, Connectivity{});
    for (int budget : {1, 2, 3}) {
        const auto t = enumerate_terminals(rot2, Budgets{budget, budget}, kToy);
        REQUIRE(static_cast<long>(t.size()) == rotation_only_count(2, 3, budget));
    }
    REQUIRE(rotation_only_count(2, 3, 2) == 24);
}

TEST_CASE("enumeration is duplicate free and mask compliant")
{
    const ActionSpace s = ActionSpace::full(2);
    const auto t = enumerate_terminals(s, Budgets{4, 2}, kToy);
    std::set<std::string> keys;
    double z = 0;
    for (const auto &term : t) {
        keys.insert(term.key);
        REQUIRE(term.key == canonical_key(term.arch));
        REQUIRE(checker::first_violation(term.arch.gates()).empty());
        REQUIRE(term.reward == Approx(std::exp(-std::abs(static_cast<double>(term.arch.size()) - 3))));
        z += term.reward;
    }
    REQUIRE(keys.size() == t.size());
    REQUIRE(partition_function(t) == Approx(z));
    REQUIRE_THROWS_AS(enumerate_terminals(s, Budgets{6, 3}, kToy, 10), std::runtime_error);
}
