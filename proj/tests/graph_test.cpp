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


#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "lcsolve/error.hpp"
#include "lcsolve/graph.hpp"
#include "support.hpp"

using namespace lcs;

namespace {

// Floyd-Warshall, kept apart from the BFS in the library.
std::vector<std::vector<int>> AllPairs(const LabeledGraph& g) {
  const int n = g.order();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

std::set<std::pair<int, int>> EdgeSet(const LabeledGraph& g) {
  std::set<std::pair<int, int>> s;
  for (const Edge& e : g.edges()) s.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return s;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const LcsError& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidInput;
}

}  // namespace

TEST_CASE("build: path with default labels") {
  const LabeledGraph g = LabeledGraph::Build(3, {{0, 1, std::nullopt}, {1, 2, std::nullopt}});
  CHECK(g.order() == 3);
  CHECK(g.size() == 2);
  CHECK(g.label(0, 1) == "1");
  CHECK(g.label(2, 1) == "1");
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.degree(1) == 2);
}

TEST_CASE("build: single vertex") {
  const LabeledGraph g = LabeledGraph::Build(1, {});
  CHECK(g.order() == 1);
  CHECK(g.size() == 0);
  CHECK(g.max_degree() == 0);
}

TEST_CASE("build: rejects bad edges") {
  CHECK(CodeOf([] { LabeledGraph::Build(3, {{0, 1, {}}, {0, 1, {}}}); }) == ErrorCode::kDuplicateEdge);
  CHECK(CodeOf([] { LabeledGraph::Build(3, {{0, 1, {}}, {1, 0, {}}}); }) == ErrorCode::kDuplicateEdge);
  CHECK(CodeOf([] { LabeledGraph::Build(3, {{2, 2, {}}}); }) == ErrorCode::kSelfLoop);
  CHECK(CodeOf([] { LabeledGraph::Build(3, {{0, 3, {}}}); }) == ErrorCode::kVertexOutOfRange);
}

TEST_CASE("build: custom labels and sorted symmetric adjacency") {
  const LabeledGraph g = LabeledGraph::Build(4, {{3, 0, std::string("x")}, {0, 1, {}}, {2, 0, {}}});
  CHECK(g.label(0, 3) == "x");
  auto nb = g.neighbors(0);
  CHECK(std::vector<int>(nb.begin(), nb.end()) == std::vector<int>{1, 2, 3});
  for (int v = 0; v < 4; ++v)
    for (int u : g.neighbors(v)) CHECK(g.adjacent(u, v));
}

TEST_CASE("power: P4 squared") {
  const LabeledGraph p2 = graph_power(path_graph(4), 2);
  CHECK(EdgeSet(p2) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}});
}

TEST_CASE("power: identity at p = 1 and C5 squared is K5") {
  const LabeledGraph c5 = cycle_graph(5);
  CHECK(EdgeSet(graph_power(c5, 1)) == EdgeSet(c5));
  CHECK(is_complete(graph_power(c5, 2)));
  CHECK(graph_power(c5, 2).size() == 10);
}

TEST_CASE("power: labels kept on original edges, default on new ones") {
  const LabeledGraph g = LabeledGraph::Build(3, {{0, 1, std::string("a")}, {1, 2, std::string("b")}});
  const LabeledGraph p = graph_power(g, 2);
  CHECK(p.label(0, 1) == "a");
  CHECK(p.label(1, 2) == "b");
  CHECK(p.label(0, 2) == "1");
}

TEST_CASE("power: distance oracle, monotonicity and degree bounds") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const LabeledGraph g = testing::RandomGraph(rng, n, 4);
    const auto d = AllPairs(g);
    std::set<std::pair<int, int>> prev = EdgeSet(g);
    for (int p = 1; p <= 4; ++p) {
      const LabeledGraph gp = graph_power(g, p);
      std::set<std::pair<int, int>> want;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (d[u][v] <= p) want.insert({u, v});
      CHECK(EdgeSet(gp) == want);
      CHECK(std::includes(want.begin(), want.end(), prev.begin(), prev.end()));
      prev = want;
      long bound = 1;
      for (int i = 0; i < p; ++i) bound *= g.max_degree();
      CHECK(g.max_degree() <= gp.max_degree());
      CHECK(gp.max_degree() <= bound);
    }
  }
}

TEST_CASE("subdivision: K3 gives C6, K1 stays, P2 gives P3") {
  const TransformedGraph s = transform_subdivision(complete_graph(3));
  CHECK(s.graph.order() == 6);
  CHECK(s.graph.size() == 6);
  for (int v = 0; v < 6; ++v) CHECK(s.graph.degree(v) == 2);
  CHECK(is_connected(s.graph));
  CHECK(transform_subdivision(complete_graph(1)).graph.order() == 1);
  const TransformedGraph p = transform_subdivision(path_graph(2));
  CHECK(p.graph.order() == 3);
  CHECK(p.graph.size() == 2);
  CHECK(p.graph.adjacent(0, 2));
  CHECK(p.graph.adjacent(1, 2));
  CHECK_FALSE(p.graph.adjacent(0, 1));
}

TEST_CASE("jagged: P2 gives K3, P3 has 5 vertices and 6 edges") {
  const TransformedGraph j = transform_jagged(path_graph(2));
  CHECK(j.graph.order() == 3);
  CHECK(is_complete(j.graph));
  CHECK(transform_jagged(complete_graph(1)).graph.order() == 1);
  const TransformedGraph p3 = transform_jagged(path_graph(3));
  CHECK(p3.graph.order() == 5);
  CHECK(p3.graph.size() == 6);
}

TEST_CASE("edge transforms: counts and vertex map on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const LabeledGraph g = testing::RandomGraph(rng, n, 5);
    const TransformedGraph s = transform_subdivision(g);
    const TransformedGraph j = transform_jagged(g);
    CHECK(s.graph.size() == 2 * g.size());
    CHECK(j.graph.size() == 3 * g.size());
    for (const TransformedGraph* t : {&s, &j}) {
      REQUIRE(static_cast<int>(t->origin.size()) == n + g.size());
      for (int v = 0; v < n; ++v) {
        CHECK(t->origin[v].kind == VertexOrigin::Kind::kVertex);
        CHECK(t->origin[v].index == v);
      }
      for (int e = 0; e < g.size(); ++e) {
        const VertexOrigin& o = t->origin[n + e];
        CHECK(o.kind == VertexOrigin::Kind::kEdge);
        CHECK(o.index == e);
        CHECK(t->graph.adjacent(n + e, g.edges()[e].u));
        CHECK(t->graph.adjacent(n + e, g.edges()[e].v));
        CHECK(t->graph.degree(n + e) == 2);
      }
    }
    // Original vertices independent in S(G), original edges kept in J(G).
    for (const Edge& e : g.edges()) {
      CHECK_FALSE(s.graph.adjacent(e.u, e.v));
      CHECK(j.graph.adjacent(e.u, e.v));
    }
  }
}

TEST_CASE("closed_ball: examples") {
  const LabeledGraph p5 = path_graph(5);
  CHECK(closed_ball(p5, 2, 1) == std::vector<int>{1, 2, 3});
  CHECK(closed_ball(p5, 0, 2) == std::vector<int>{0, 1, 2});
  CHECK(closed_ball(p5, 3, 0) == std::vector<int>{3});
}

TEST_CASE("closed_ball: fixpoint of neighbor expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 15);
    const LabeledGraph g = testing::RandomGraph(rng, n, 4);
    for (int v = 0; v < n; ++v) {
      std::set<int> ball{v};
      for (int r = 0; r <= 4; ++r) {
        CHECK(closed_ball(g, v, r) == std::vector<int>(ball.begin(), ball.end()));
        std::set<int> next = ball;
        for (int u : ball)
          for (int w : g.neighbors(u)) next.insert(w);
        ball = next;
      }
    }
  }
}

TEST_CASE("gr format: round trip with labels and comments") {
  std::istringstream in("c hello\np tw 4 3\n1 2\n2 3 red\nc mid\n3 4\n");
  const LabeledGraph g = read_gr(in);
  CHECK(g.order() == 4);
  CHECK(g.size() == 3);
  CHECK(g.label(1, 2) == "red");
  std::ostringstream out;
  write_gr(out, g);
  CHECK(out.str() == "p tw 4 3\n1 2\n2 3 red\n3 4\n");
  std::istringstream again(out.str());
  CHECK(EdgeSet(read_gr(again)) == EdgeSet(g));
}

TEST_CASE("gr format: errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_gr(in);
  };
  CHECK(CodeOf([&] { parse("1 2\n"); }) == ErrorCode::kParseError);
  CHECK(CodeOf([&] { parse("p tw 2 2\n1 2\n"); }) == ErrorCode::kParseError);
  CHECK(CodeOf([&] { parse("p tw 2 1\n1 3\n"); }) == ErrorCode::kVertexOutOfRange);
  CHECK(CodeOf([&] { parse("p tw 2 1\n1 x\n"); }) == ErrorCode::kParseError);
  CHECK(CodeOf([&] { parse("p tw 2 2\n1 2\n2 1\n"); }) == ErrorCode::kDuplicateEdge);
}

TEST_CASE("families and connectivity") {
  CHECK(path_graph(6).size() == 5);
  CHECK(cycle_graph(6).size() == 6);
  CHECK(complete_graph(5).size() == 10);
  CHECK(star_graph(4).order() == 5);
  CHECK(is_connected(path_graph(6)));
  CHECK_FALSE(is_connected(LabeledGraph::Build(3, {{0, 1, {}}})));
  CHECK(is_complete(complete_graph(1)));
  CHECK_FALSE(is_complete(path_graph(3)));
  CHECK(bfs_distances(path_graph(4), 0) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("corpus: 31 connected graphs up to five vertices") {
  // 1 + 1 + 2 + 6 + 21 isomorphism classes.
  const auto graphs = testing::ConnectedGraphs(5);
  CHECK(graphs.size() == 31);
  for (const LabeledGraph& g : graphs) CHECK(is_connected(g));
}
