// Copyright 2026 The lcsolve Authors
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

#ifndef LCSOLVE_GRAPH_HPP_
#define LCSOLVE_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lcs {

using Vertex = int;

struct EdgeSpec {
  Vertex u;
  Vertex v;
  std::optional<std::string> label;
};

struct Edge {
  Vertex u;
  Vertex v;
  std::string label;
};

// Simple undirected graph with one opaque label per edge. Immutable once
// built; vertices are 0..n-1.
class LabeledGraph {
 public:
  static constexpr const char* kDefaultLabel = "1";

  LabeledGraph() = default;
  static LabeledGraph Build(int n, const std::vector<EdgeSpec>& edges);

  int order() const { return static_cast<int>(adj_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  bool adjacent(Vertex u, Vertex v) const;
  // Index into edges() or -1.
  int edge_index(Vertex u, Vertex v) const;
  const std::string& label(Vertex u, Vertex v) const;
  // Edges in input order.
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<int>> adj_edge_;  // aligned with adj_
  std::vector<Edge> edges_;
};

struct VertexOrigin {
  enum class Kind { kVertex, kEdge };
  Kind kind = Kind::kVertex;
  int index = 0;  // original vertex id or original edge index
};

using VertexMap = std::vector<VertexOrigin>;

struct TransformedGraph {
  LabeledGraph graph;
  VertexMap origin;
};

LabeledGraph graph_power(const LabeledGraph& g, int p);
TransformedGraph transform_subdivision(const LabeledGraph& g);
TransformedGraph transform_jagged(const LabeledGraph& g);

// N^r[v], sorted.
std::vector<Vertex> closed_ball(const LabeledGraph& g, Vertex v, int r);
// BFS distances from v, -1 for unreachable.
std::vector<int> bfs_distances(const LabeledGraph& g, Vertex v);

bool is_connected(const LabeledGraph& g);
bool is_complete(const LabeledGraph& g);

// PACE .gr. A third token on an edge line is read as the edge label.
LabeledGraph read_gr(std::istream& in);
LabeledGraph read_gr_file(const std::string& path);
void write_gr(std::ostream& out, const LabeledGraph& g);

// Small named families used by tests and the CLI.
LabeledGraph path_graph(int n);
LabeledGraph cycle_graph(int n);
LabeledGraph complete_graph(int n);
LabeledGraph star_graph(int leaves);

}  // namespace lcs

#endif  // LCSOLVE_GRAPH_HPP_
