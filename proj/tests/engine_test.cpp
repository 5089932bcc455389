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


#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lcsolve/catalog.hpp"
#include "lcsolve/engine.hpp"
#include "lcsolve/error.hpp"
#include "lcsolve/oracle.hpp"
#include "support.hpp"

using namespace lcs;
using json = nlohmann::json;

namespace {

EasyNode Node(NodeKind kind, std::vector<int> bag, int vertex, int c0, int c1, int parent) {
  EasyNode x;
  x.kind = kind;
  x.bag = std::move(bag);
  x.vertex = vertex;
  x.children[0] = c0;
  x.children[1] = c1;
  x.parent = parent;
  return x;
}

// P3 with a join over the middle vertex.
EasyTreeDecomposition JoinedP3() {
  EasyTreeDecomposition e;
  e.nodes = {
      Node(NodeKind::kJoin, {1}, -1, 1, 4, -1),
      Node(NodeKind::kForget, {1}, 0, 2, -1, 0),
      Node(NodeKind::kIntroduce, {0, 1}, 1, 3, -1, 1),
      Node(NodeKind::kLeaf, {0}, 0, -1, -1, 2),
      Node(NodeKind::kForget, {1}, 2, 5, -1, 0),
      Node(NodeKind::kIntroduce, {1, 2}, 1, 6, -1, 4),
      Node(NodeKind::kLeaf, {2}, 2, -1, -1, 5),
  };
  e.root = 0;
  return e;
}

DPState State(std::vector<int> color, std::vector<NValue> acc, std::vector<NValue> mode,
              uint32_t charged, uint32_t removed = 0) {
  DPState s;
  s.color = std::move(color);
  s.acc = std::move(acc);
  s.mode = std::move(mode);
  s.charged = charged;
  s.removed = removed;
  return s;
}

SolveResult Run(const ProblemBundle& b, const TreeDecomposition& td, SolveOptions o = {}) {
  return solve(b.reduced, b.pns, to_easy(b.reduced->graph, td), o);
}

std::vector<int> Shuffled(std::mt19937_64& rng, int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  return order;
}

const std::vector<std::pair<std::string, json>>& Problems() {
  static const std::vector<std::pair<std::string, json>> p = {
      {"dominating-set", json::object()},
      {"roman-domination", json::object()},
      {"independent-set", json::object()},
      {"k-coloring", {{"k", 3}}},
      {"k-rainbow-domination", {{"k", 2}}},
      {"total-domination", json::object()},
      {"{k}-domination", {{"k", 2}}},
      {"double-roman-domination", json::object()},
  };
  return p;
}

}  // namespace

TEST_CASE("solve: dominating set on P3 with witness") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(3));
  SolveOptions o;
  o.witness = true;
  const SolveResult r = Run(b, path_decomposition(3), o);
  CHECK(r.optimum == Weight::Of(1));
  const auto w = extract_witness(r);
  CHECK(is_proper(*b.reduced, w));
  CHECK(coloring_weight(*b.reduced, w) == r.optimum);
  CHECK(w == std::vector<Color>{0, 1, 0});
}

TEST_CASE("solve: 1-coloring of K2 is infeasible") {
  const ProblemBundle b = instantiate("k-coloring", {{"k", 1}}, path_graph(2));
  SolveOptions o;
  o.witness = true;
  const SolveResult r = Run(b, single_bag_decomposition(2), o);
  CHECK(r.optimum.error);
  try {
    extract_witness(r);
    FAIL("expected WitnessUnavailable");
  } catch (const LcsError& e) {
    CHECK(e.code() == ErrorCode::kWitnessUnavailable);
  }
}

TEST_CASE("solve: single vertex") {
  for (const CatalogEntry& e : catalog_entries()) {
    ProblemBundle b;
    try {
      b = instantiate(e.name, e.example_params, complete_graph(1));
    } catch (const LcsError&) {
      continue;
    }
    if (b.transform != GraphTransform::kNone) continue;
    const ProblemInstance& inst = *b.reduced;
    Weight want = Weight::Error();
    for (size_t k = 0; k < inst.lists[0].size(); ++k) {
      const Color i = inst.lists[0][k];
      if (b.pns->accept(0, i, b.pns->neutral(0, i))) want = inst.algebra.min(want, inst.costs[0][k]);
    }
    SolveOptions o;
    o.witness = true;
    const SolveResult r = Run(b, single_bag_decomposition(1), o);
    CAPTURE(e.name);
    CHECK(r.optimum == want);
    if (!r.optimum.error) CHECK(r.witness->size() == 1);
  }
}

TEST_CASE("eval_leaf: charge, final check, equality target") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(3));
  DpEngine eng(b.reduced, b.pns, JoinedP3());
  // Leaf node 3 holds vertex 0. Colors: position 0 is "0", 1 is "1".
  CHECK(eng.eval_leaf(3, State({0}, {1}, {kFinal}, 1)) == Weight::Of(0));
  CHECK(eng.eval_leaf(3, State({1}, {0}, {kFinal}, 1)) == Weight::Of(1));
  CHECK(eng.eval_leaf(3, State({1}, {0}, {kFinal}, 0)) == Weight::Of(0));
  CHECK(eng.eval_leaf(3, State({0}, {0}, {kFinal}, 1)).error);
  CHECK(eng.eval_leaf(3, State({0}, {0}, {1}, 1)).error);
  CHECK(eng.eval_leaf(3, State({0}, {1}, {1}, 0)) == Weight::Of(0));
}

TEST_CASE("eval_forget: min over the forgotten vertex") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(3));
  DpEngine eng(b.reduced, b.pns, JoinedP3());
  // Node 1 forgets vertex 0 above bag {0,1}. Vertex 1 selected and charged:
  // vertex 0 is then dominated for free.
  CHECK(eng.eval_forget(1, State({1}, {0}, {kFinal}, 1)) == Weight::Of(1));
  // Vertex 1 unselected and uncharged, asking for exactly one selected neighbor
  // below: vertex 0 must be selected.
  CHECK(eng.eval_forget(1, State({0}, {0}, {1}, 0)) == Weight::Of(1));
  // Unselected vertex 1 must see no selected neighbor below, yet vertex 0 needs
  // domination from inside the subtree: impossible.
  CHECK(eng.eval_forget(1, State({0}, {0}, {0}, 0)).error);
}

TEST_CASE("eval_forget: single-color list") {
  const ProblemBundle b = instantiate("k-coloring", {{"k", 1}}, path_graph(1));
  EasyTreeDecomposition e = to_easy(path_graph(1), single_bag_decomposition(1));
  DpEngine eng(b.reduced, b.pns, e);
  CHECK(eng.Solve().optimum == Weight::Of(1));
}

TEST_CASE("eval_introduce and bag_ns") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(3));
  DpEngine eng(b.reduced, b.pns, JoinedP3());
  // Node 2 introduces vertex 1 into bag {0,1}.
  const DPState both = State({1, 1}, {0, 0}, {kFinal, kFinal}, 0b11);
  CHECK(eng.bag_ns(2, both, 0) == 1);
  CHECK(eng.bag_ns(2, both, 1) == 1);
  const DPState cut = State({1, 1}, {0, 0}, {kFinal, kFinal}, 0b11, 0b11);
  CHECK(eng.bag_ns(2, cut, 0) == 0);
  CHECK(eng.bag_ns(2, cut, 1) == 0);
  // Vertex 1 selected next to unselected 0: 0 gets its count from 1.
  CHECK(eng.eval_introduce(2, State({0, 1}, {0, 0}, {kFinal, kFinal}, 0b11)) == Weight::Of(1));
  // Same with the edge removed: vertex 0 stays undominated.
  CHECK(eng.eval_introduce(2, State({0, 1}, {0, 0}, {kFinal, kFinal}, 0b11, 0b11)).error);
}

TEST_CASE("bag_ns: capped count and rainbow union") {
  const LabeledGraph star = star_graph(2);
  {
    const ProblemBundle b = instantiate("dominating-set", json::object(), star);
    const EasyTreeDecomposition e = to_easy(star, single_bag_decomposition(3));
    DpEngine eng(b.reduced, b.pns, e);
    int full = -1;
    for (int t = 0; t < e.num_nodes(); ++t)
      if (e.nodes[t].bag.size() == 3) full = t;
    REQUIRE(full >= 0);
    const DPState s = State({1, 1, 1}, {0, 0, 0}, {kFinal, kFinal, kFinal}, 0);
    CHECK(eng.bag_ns(full, s, 0) == 1);
    const DPState none = State({1, 0, 0}, {0, 0, 0}, {kFinal, kFinal, kFinal}, 0);
    CHECK(eng.bag_ns(full, none, 0) == b.pns->neutral(0, 1));
  }
  {
    const ProblemBundle b = instantiate("k-rainbow-domination", {{"k", 2}}, star);
    const EasyTreeDecomposition e = to_easy(star, single_bag_decomposition(3));
    DpEngine eng(b.reduced, b.pns, e);
    int full = -1;
    for (int t = 0; t < e.num_nodes(); ++t)
      if (e.nodes[t].bag.size() == 3) full = t;
    const Color one = b.reduced->color_by_name("{1}");
    const Color two = b.reduced->color_by_name("{2}");
    const DPState s = State({0, one, two}, {0, 0, 0}, {kFinal, kFinal, kFinal}, 0);
    CHECK(b.pns->describe(0, 0, eng.bag_ns(full, s, 0)) == b.pns->describe(0, 0, 3));
    CHECK(eng.bag_ns(full, s, 0) == 3);
  }
}

TEST_CASE("eval_join: P3 over the middle vertex") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(3));
  const EasyTreeDecomposition e = JoinedP3();
  CHECK(check_easy(e).empty());
  SolveOptions o;
  o.witness = true;
  const SolveResult r = solve(b.reduced, b.pns, e, o);
  CHECK(r.optimum == Weight::Of(1));
  CHECK(*r.witness == std::vector<Color>{0, 1, 0});
  DpEngine eng(b.reduced, b.pns, e);
  CHECK(eng.eval_join(0, eng.RootState(1)) == Weight::Of(1));
  CHECK(eng.eval_join(0, eng.RootState(0)) == Weight::Of(2));
  // Equality target 1 on an unselected root would need one of the outer
  // vertices selected on each side and the root dominated exactly once.
  CHECK(eng.eval_join(0, State({0}, {0}, {0}, 1)).error);
}

TEST_CASE("eval_join: Roman domination uses small pair sets") {
  const ProblemBundle b = instantiate("roman-domination", json::object(), path_graph(3));
  CHECK(b.pns->domain_size(1, 0) == 2);
  const SolveResult r = solve(b.reduced, b.pns, JoinedP3());
  CHECK(r.optimum == Weight::Of(2));
  CHECK(r.stats.join_pairs <= 3 * 4);
}

TEST_CASE("decomposition independence, memoization and threads") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    // Random orders give wide join bags; n = 7 costs minutes for double Roman.
    const int n = 2 + static_cast<int>(rng() % 5);
    const LabeledGraph g = testing::RandomGraph(rng, n, 4, 55);
    if (!is_connected(g)) continue;
    for (const auto& [name, params] : Problems()) {
      const ProblemBundle b = instantiate(name, params, g);
      const auto order = Shuffled(rng, n);
      SolveOptions plain;
      plain.witness = true;
      const SolveResult ref = Run(b, heuristic_decomposition(g), plain);
      const SolveResult joined = Run(b, decomposition_from_order(g, order, false), plain);
      const SolveResult single = Run(b, single_bag_decomposition(n), plain);
      SolveOptions nomemo = plain;
      nomemo.memoize = false;
      SolveOptions threads = plain;
      threads.threads = 4;
      SolveOptions checked = plain;
      checked.validate_domains = true;
      CAPTURE(name);
      CAPTURE(testing::GraphKey(g));
      CHECK(joined.optimum == ref.optimum);
      CHECK(single.optimum == ref.optimum);
      CHECK(Run(b, decomposition_from_order(g, order, false), nomemo).optimum == ref.optimum);
      CHECK(Run(b, heuristic_decomposition(g), checked).optimum == ref.optimum);
      const SolveResult par = Run(b, decomposition_from_order(g, order, false), threads);
      CHECK(par.optimum == joined.optimum);
      CHECK(par.witness == joined.witness);
      CHECK(brute_force_solve(*b.reduced).optimum == ref.optimum);
      for (const SolveResult* r : {&ref, &joined, &single, &par}) {
        if (r->optimum.error) continue;
        CHECK(is_proper(*b.reduced, *r->witness));
        CHECK(coloring_weight(*b.reduced, *r->witness) == r->optimum);
      }
    }
  }
}

TEST_CASE("choose_decomposition: valid, same optimum, avoids joins for wide systems") {
  std::mt19937_64 rng(33);
  int chose_path = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const LabeledGraph g = testing::RandomGraph(rng, n, 3, 55);
    for (const auto& [name, params] : Problems()) {
      const ProblemBundle b = instantiate(name, params, g);
      const TreeDecomposition td = choose_decomposition(*b.reduced, *b.pns);
      CAPTURE(name);
      CAPTURE(testing::GraphKey(g));
      REQUIRE(validate_decomposition(b.reduced->graph, td).ok);
      CHECK(Run(b, td, {}).optimum == Run(b, heuristic_decomposition(b.reduced->graph), {}).optimum);
    }
  }
  // Additive coloring has large N domains: a join costs a squared factor.
  const LabeledGraph spider = LabeledGraph::Build(
      7, {{0, 1, std::nullopt}, {1, 2, std::nullopt}, {0, 3, std::nullopt}, {3, 4, std::nullopt},
          {0, 5, std::nullopt}, {5, 6, std::nullopt}});
  const ProblemBundle b = instantiate("additive-coloring", {{"eta", 3}}, spider);
  const TreeDecomposition td = choose_decomposition(*b.reduced, *b.pns);
  const EasyTreeDecomposition etd = to_easy(spider, td);
  for (const EasyNode& nd : etd.nodes) chose_path += nd.kind == NodeKind::kJoin;
  CHECK(chose_path == 0);
  CHECK(estimate_log_states(*b.reduced, *b.pns, etd) <
        estimate_log_states(*b.reduced, *b.pns, to_easy(spider, heuristic_decomposition(spider))));
}

TEST_CASE("estimate_log_states: single bag by hand") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(2));
  // leaf {v}, introduce {0,1}, forget to the root {x}: |L| = 2, |N| = 2
  const EasyTreeDecomposition etd = to_easy(path_graph(2), single_bag_decomposition(2));
  const double want = std::log(4.0 + 16.0 + 4.0);
  CHECK(estimate_log_states(*b.reduced, *b.pns, etd) == doctest::Approx(want));
}

TEST_CASE("pruning: a stricter system never improves the optimum") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const LabeledGraph g = testing::RandomGraph(rng, n, 3, 60);
    if (!is_connected(g)) continue;
    const auto& [name, params] = Problems()[trial % Problems().size()];
    const ProblemBundle b = instantiate(name, params, g);
    const Vertex bad_v = static_cast<Vertex>(rng() % n);
    const uint64_t salt = rng();
    auto base = b.pns;
    auto strict = std::make_shared<FunctionalPns>();
    strict->size_fn = [base](Vertex v, Color i) { return base->domain_size(v, i); };
    strict->neutral_fn = [base](Vertex v, Color i) { return base->neutral(v, i); };
    strict->combine_fn = [base](Vertex v, Color i, NValue a, NValue c) { return base->combine(v, i, a, c); };
    strict->make_fn = [base](Vertex v, Color i, Vertex u, Color j) { return base->make(v, i, u, j); };
    strict->accept_fn = [base, bad_v, salt](Vertex v, Color i, NValue x) {
      if (v == bad_v && (x + static_cast<uint64_t>(i) + salt) % 3 == 0) return false;
      return base->accept(v, i, x);
    };
    const TreeDecomposition td = decomposition_from_order(g, Shuffled(rng, n), false);
    const Weight loose = Run(b, td).optimum;
    const Weight tight = solve(b.reduced, strict, to_easy(g, td)).optimum;
    CAPTURE(name);
    CHECK(b.reduced->algebra.precedes(loose, tight));
  }
}

TEST_CASE("trace: one line per evaluated state") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(4));
  std::ostringstream log;
  SolveOptions o;
  o.trace = &log;
  const SolveResult r = Run(b, path_decomposition(4), o);
  CHECK(r.optimum == Weight::Of(2));
  const std::string s = log.str();
  CHECK(static_cast<uint64_t>(std::count(s.begin(), s.end(), '\n')) == r.stats.states);
}

TEST_CASE("solve: rejects radius above one and broken decompositions") {
  ProblemBundle b = instantiate("distance-domination", {{"k", 2}, {"route", "power"}}, path_graph(5));
  REQUIRE(b.instance->radius == 2);
  {
    CHECK_THROWS_AS(solve(b.instance, b.pns, to_easy(b.reduced->graph, heuristic_decomposition(b.reduced->graph))), LcsError);
  }
  const ProblemBundle d = instantiate("dominating-set", json::object(), path_graph(3));
  EasyTreeDecomposition e = JoinedP3();
  e.nodes[2].vertex = 0;
  CHECK_THROWS_AS(solve(d.reduced, d.pns, e), LcsError);
}
