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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "flowq/common/rng.hpp"

namespace flowq {

/// Simple undirected graph. Edges are stored with u < v, sorted, without
/// duplicates or self-loops.
class Graph {
  public:
    Graph() = default;
    /// Throws std::invalid_argument on self-loops, duplicate edges (in either
    /// orientation) or out-of-range vertices.
    Graph(int n_vertices, std::vector<std::pair<int, int>> edges);

    int n_vertices() const { return n_; }
    const std::vector<std::pair<int, int>> &edges() const { return edges_; }
    std::size_t n_edges() const { return edges_.size(); }

    /// Number of edges crossing the partition encoded by `bits` (bit v set =
    /// vertex v on side 1).
    int cut_value(std::uint64_t bits) const;

    bool operator==(const Graph &) const = default;

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

/// G(n, p_e): every unordered pair becomes an edge with probability p_e.
Graph erdos_renyi(int n_vertices, double edge_prob, Rng &rng);

/**
 * Graph file format:
 *
 *     # comment
 *     vertices 4
 *     0 1
 *     1 2
 *
 * Throws std::runtime_error with the line number on malformed input.
 */
Graph parse_graph(std::istream &in);
Graph load_graph(const std::string &path);
void write_graph(std::ostream &out, const Graph &graph);

} // namespace flowq
