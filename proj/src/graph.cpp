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

#include "lcsolve/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "lcsolve/error.hpp"

namespace lcs {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kVertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kInvalidColor: return "InvalidColor";
    case ErrorCode::kUnknownProblem: return "UnknownProblem";
    case ErrorCode::kMissingParameter: return "MissingParameter";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kEdgeNotInGraph: return "EdgeNotInGraph";
    case ErrorCode::kIsolatedVertex: return "IsolatedVertex";
    case ErrorCode::kNotComplete: return "NotComplete";
    case ErrorCode::kTooManyColors: return "TooManyColors";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kWitnessUnavailable: return "WitnessUnavailable";
    case ErrorCode::kTooManyConstraints: return "TooManyConstraints";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kSymmetryViolation: return "SymmetryViolation";
    case ErrorCode::kCapTooSmall: return "CapTooSmall";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

LabeledGraph LabeledGraph::Build(int n, const std::vector<EdgeSpec>& edges) {
  if (n < 0) throw LcsError(ErrorCode::kInvalidInput, "negative vertex count");
  LabeledGraph g;
  g.adj_.assign(n, {});
  g.adj_edge_.assign(n, {});
  std::vector<std::vector<std::pair<Vertex, int>>> tmp(n);
  for (const EdgeSpec& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw LcsError(ErrorCode::kVertexOutOfRange,
                     "edge (" + std::to_string(e.u) + "," +
                         std::to_string(e.v) + ") with n=" + std::to_string(n));
    }
    if (e.u == e.v) {
      throw LcsError(ErrorCode::kSelfLoop, "vertex " + std::to_string(e.u));
    }
    const int idx = static_cast<int>(g.edges_.size());
    g.edges_.push_back({e.u, e.v, e.label.value_or(kDefaultLabel)});
    tmp[e.u].push_back({e.v, idx});
    tmp[e.v].push_back({e.u, idx});
  }
  for (Vertex v = 0; v < n; ++v) {
    std::sort(tmp[v].begin(), tmp[v].end());
    for (size_t i = 0; i < tmp[v].size(); ++i) {
      if (i > 0 && tmp[v][i].first == tmp[v][i - 1].first) {
        throw LcsError(ErrorCode::kDuplicateEdge,
                       "(" + std::to_string(v) + "," +
                           std::to_string(tmp[v][i].first) + ")");
      }
      g.adj_[v].push_back(tmp[v][i].first);
      g.adj_edge_[v].push_back(tmp[v][i].second);
    }
  }
  return g;
}

int LabeledGraph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

int LabeledGraph::edge_index(Vertex u, Vertex v) const {
  if (u < 0 || u >= order() || v < 0 || v >= order()) return -1;
  const auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it == a.end() || *it != v) return -1;
  return adj_edge_[u][it - a.begin()];
}

bool LabeledGraph::adjacent(Vertex u, Vertex v) const {
  return edge_index(u, v) >= 0;
}

const std::string& LabeledGraph::label(Vertex u, Vertex v) const {
  const int idx = edge_index(u, v);
  if (idx < 0) {
    throw LcsError(ErrorCode::kEdgeNotInGraph,
                   "(" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  return edges_[idx].label;
}

std::vector<int> bfs_distances(const LabeledGraph& g, Vertex v) {
  std::vector<int> dist(g.order(), -1);
  std::deque<Vertex> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::vector<Vertex> closed_ball(const LabeledGraph& g, Vertex v, int r) {
  if (v < 0 || v >= g.order()) {
    throw LcsError(ErrorCode::kVertexOutOfRange, std::to_string(v));
  }
  std::vector<int> dist(g.order(), -1);
  std::deque<Vertex> queue{v};
  dist[v] = 0;
  std::vector<Vertex> out;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    out.push_back(x);
    if (dist[x] == r) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LabeledGraph graph_power(const LabeledGraph& g, int p) {
  if (p < 1) throw LcsError(ErrorCode::kInvalidParameter, "power must be >= 1");
  std::vector<EdgeSpec> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.label});
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v : closed_ball(g, u, p)) {
      if (v > u && !g.adjacent(u, v)) edges.push_back({u, v, std::nullopt});
    }
  }
  return LabeledGraph::Build(g.order(), edges);
}

namespace {

TransformedGraph EdgeTransform(const LabeledGraph& g, bool keep_edges) {
  const int n = g.order();
  TransformedGraph out;
  std::vector<EdgeSpec> edges;
  if (keep_edges) {
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.label});
  }
  for (int i = 0; i < g.size(); ++i) {
    const Edge& e = g.edges()[i];
    edges.push_back({e.u, n + i, e.label});
    edges.push_back({e.v, n + i, e.label});
  }
  out.graph = LabeledGraph::Build(n + g.size(), edges);
  out.origin.resize(n + g.size());
  for (int v = 0; v < n; ++v) {
    out.origin[v] = {VertexOrigin::Kind::kVertex, v};
  }
  for (int i = 0; i < g.size(); ++i) {
    out.origin[n + i] = {VertexOrigin::Kind::kEdge, i};
  }
  return out;
}

}  // namespace

TransformedGraph transform_subdivision(const LabeledGraph& g) {
  return EdgeTransform(g, false);
}

TransformedGraph transform_jagged(const LabeledGraph& g) {
  return EdgeTransform(g, true);
}

bool is_connected(const LabeledGraph& g) {
  if (g.order() == 0) return true;
  const auto d = bfs_distances(g, 0);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

bool is_complete(const LabeledGraph& g) {
  const long n = g.order();
  return g.size() == n * (n - 1) / 2;
}

LabeledGraph path_graph(int n) {
  std::vector<EdgeSpec> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, std::nullopt});
  return LabeledGraph::Build(n, e);
}

LabeledGraph cycle_graph(int n) {
  std::vector<EdgeSpec> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, std::nullopt});
  return LabeledGraph::Build(n, e);
}

LabeledGraph complete_graph(int n) {
  std::vector<EdgeSpec> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, std::nullopt});
  return LabeledGraph::Build(n, e);
}

LabeledGraph star_graph(int leaves) {
  std::vector<EdgeSpec> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i, std::nullopt});
  return LabeledGraph::Build(leaves + 1, e);
}

}  // namespace lcs
