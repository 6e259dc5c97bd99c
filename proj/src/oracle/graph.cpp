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

#include "flowq/oracle/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flowq {

Graph::Graph(int n_vertices, std::vector<std::pair<int, int>> edges) : n_(n_vertices)
{
    if (n_vertices < 1 || n_vertices > 63) {
        throw std::invalid_argument("graph: vertex count must be in 1..63");
    }
    for (auto &[u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices) {
            throw std::invalid_argument("graph: edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ") out of range");
        }
        if (u == v) {
            throw std::invalid_argument("graph: self-loop on vertex " + std::to_string(u));
        }
        if (u > v) {
            std::swap(u, v);
        }
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("graph: duplicate edge");
    }
    edges_ = std::move(edges);
}

int Graph::cut_value(std::uint64_t bits) const
{
    int cut = 0;
    for (const auto &[u, v] : edges_) {
        cut += static_cast<int>(((bits >> u) ^ (bits >> v)) & 1U);
    }
    return cut;
}

Graph erdos_renyi(int n_vertices, double edge_prob, Rng &rng)
{
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw std::invalid_argument("erdos_renyi: edge probability must be in [0,1]");
    }
    std::bernoulli_distribution coin(edge_prob);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n_vertices; ++u) {
        for (int v = u + 1; v < n_vertices; ++v) {
            if (coin(rng)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph(n_vertices, std::move(edges));
}

Graph parse_graph(std::istream &in)
{
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string &msg) {
        throw std::runtime_error("graph line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) {
            continue;
        }
        if (first == "vertices") {
            if (n >= 0) {
                fail("repeated vertices header");
            }
            if (!(ls >> n) || n < 1) {
                fail("expected a positive vertex count");
            }
        } else {
            if (n < 0) {
                fail("edge before the vertices header");
            }
            int u = 0;
            int v = 0;
            std::istringstream es(first);
            if (!(es >> u) || !es.eof() || !(ls >> v)) {
                fail("expected 'u v'");
            }
            edges.emplace_back(u, v);
        }
        std::string extra;
        if (ls >> extra) {
            fail("trailing token '" + extra + "'");
        }
    }
    if (n < 0) {
        throw std::runtime_error("graph: missing 'vertices N' header");
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(e.what());
    }
}

Graph load_graph(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file " + path);
    }
    return parse_graph(in);
}

void write_graph(std::ostream &out, const Graph &graph)
{
    out << "vertices " << graph.n_vertices() << '\n';
    for (const auto &[u, v] : graph.edges()) {
        out << u << ' ' << v << '\n';
    }
}

} // namespace flowq
