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

#ifndef LCSOLVE_TREEDEC_HPP_
#define LCSOLVE_TREEDEC_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "lcsolve/graph.hpp"

namespace lcs {

// Rooted tree decomposition. parent[root] == -1; bags are kept sorted.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<int> parent;
  int root = -1;
  int declared_vertices = -1;  // from a .td header, -1 if unknown

  int num_nodes() const { return static_cast<int>(bags.size()); }
  int width() const;
};

enum class Violation { kNone, kNotATree, kBagOutOfRange, kW1, kW2, kW3 };
const char* ViolationName(Violation v);

struct ValidationReport {
  bool ok = false;
  int width = -1;
  Violation violation = Violation::kNone;
  Vertex vertex = -1;  // witness for W1/W3
  Vertex edge_u = -1;  // witness for W2
  Vertex edge_v = -1;
  std::string message;
};

ValidationReport validate_decomposition(const LabeledGraph& g,
                                        const TreeDecomposition& td);

// Min-fill elimination, ties to the lowest vertex id.
std::vector<Vertex> min_fill_order(const LabeledGraph& g);
TreeDecomposition heuristic_decomposition(const LabeledGraph& g);
// Elimination-tree decomposition for a given order. chain_siblings hangs
// leaf siblings below each other where possible, which removes joins.
TreeDecomposition decomposition_from_order(const LabeledGraph& g,
                                           const std::vector<Vertex>& order,
                                           bool chain_siblings);
// Small-boundary vertex order: exact vertex separation up to 16 vertices,
// greedy beyond.
std::vector<Vertex> linear_layout(const LabeledGraph& g);
// Path-shaped decomposition: bag i holds layout[i] and every earlier vertex
// with a neighbor at position >= i.
TreeDecomposition decomposition_from_layout(const LabeledGraph& g,
                                            const std::vector<Vertex>& layout);
TreeDecomposition linear_decomposition(const LabeledGraph& g);
// Bags {i, i+1} along 0-1-...-(n-1).
TreeDecomposition path_decomposition(int n);
TreeDecomposition single_bag_decomposition(int n);

enum class NodeKind { kLeaf, kIntroduce, kForget, kJoin };
const char* NodeKindName(NodeKind k);

struct EasyNode {
  NodeKind kind = NodeKind::kLeaf;
  std::vector<Vertex> bag;  // sorted
  Vertex vertex = -1;       // introduced / forgotten / leaf vertex
  int children[2] = {-1, -1};
  int parent = -1;

  int num_children() const {
    return (children[0] >= 0 ? 1 : 0) + (children[1] >= 0 ? 1 : 0);
  }
};

struct EasyTreeDecomposition {
  std::vector<EasyNode> nodes;
  int root = -1;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int width() const;
  TreeDecomposition as_tree_decomposition() const;
};

EasyTreeDecomposition to_easy(const LabeledGraph& g,
                              const TreeDecomposition& td);
// Empty string when every node satisfies its kind's bag equation.
std::string check_easy(const EasyTreeDecomposition& etd);

TreeDecomposition lift_power(const LabeledGraph& g, const TreeDecomposition& td,
                             int p);

enum class EdgeTransformKind { kSubdivision, kJagged };
TreeDecomposition lift_edge_transform(const LabeledGraph& g,
                                      const TreeDecomposition& td,
                                      EdgeTransformKind kind);

// PACE .td. Tree edges are undirected; the result is rooted at bag 1.
TreeDecomposition read_td(std::istream& in);
TreeDecomposition read_td_file(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td, int n);

}  // namespace lcs

#endif  // LCSOLVE_TREEDEC_HPP_
