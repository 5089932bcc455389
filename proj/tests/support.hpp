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

#ifndef LCSOLVE_TESTS_SUPPORT_HPP_
#define LCSOLVE_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcsolve/catalog.hpp"
#include "lcsolve/error.hpp"
#include "lcsolve/oracle.hpp"
#include "lcsolve/pns.hpp"

namespace lcs::testing {

inline LabeledGraph FromMask(int n, uint32_t mask) {
  std::vector<EdgeSpec> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if (mask >> bit & 1) edges.push_back({u, v, std::nullopt});
    }
  }
  return LabeledGraph::Build(n, edges);
}

// Smallest relabeled edge mask; equal for isomorphic graphs.
inline uint32_t CanonicalMask(int n, uint32_t mask) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) adj[u][v] = adj[v][u] = mask >> bit & 1;
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  uint32_t best = UINT32_MAX;
  do {
    uint32_t m = 0;
    int b = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++b) {
        if (adj[perm[u]][perm[v]]) m |= 1u << b;
      }
    }
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// One representative per isomorphism class, by order.
inline std::vector<LabeledGraph> GraphClasses(int max_n, bool connected_only) {
  std::vector<LabeledGraph> out;
  for (int n = 1; n <= max_n; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::set<uint32_t> seen;
    for (uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      const uint32_t canon = CanonicalMask(n, mask);
      if (canon != mask || !seen.insert(canon).second) continue;
      const LabeledGraph g = FromMask(n, mask);
      if (connected_only && !is_connected(g)) continue;
      out.push_back(g);
    }
  }
  return out;
}

inline std::vector<LabeledGraph> ConnectedGraphs(int max_n) { return GraphClasses(max_n, true); }

// Portable: only raw engine output is used, never std distributions.
inline LabeledGraph RandomGraph(std::mt19937_64& rng, int n, int max_degree,
                                int percent = 45) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  for (size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng() % i]);
  std::vector<int> deg(n, 0);
  std::vector<EdgeSpec> edges;
  for (auto [u, v] : pairs) {
    if (deg[u] >= max_degree || deg[v] >= max_degree) continue;
    if (static_cast<int>(rng() % 100) >= percent) continue;
    ++deg[u];
    ++deg[v];
    edges.push_back({u, v, std::nullopt});
  }
  return LabeledGraph::Build(n, edges);
}

inline std::string GraphKey(const LabeledGraph& g) {
  std::string s = std::to_string(g.order()) + ":";
  for (const Edge& e : g.edges()) s += std::to_string(e.u) + "-" + std::to_string(e.v) + ",";
  return s;
}

// Result of one run as text: a number, ERROR, or the error code thrown.
template <typename F>
std::string Outcome(F&& f) {
  try {
    return FormatWeight(f());
  } catch (const LcsError& e) {
    return std::string("throw:") + ErrorCodeName(e.code());
  }
}

inline std::string DpOutcome(const std::string& name, const nlohmann::json& params,
                             const LabeledGraph& g) {
  return Outcome([&] { return solve_problem(instantiate(name, params, g), std::nullopt).optimum; });
}

inline std::string NativeOutcome(const std::string& name, const nlohmann::json& params,
                                 const LabeledGraph& g) {
  return Outcome([&] { return native_optimum(name, params, g); });
}

// Brute force over the encoded instance; "skip" when over the budget.
inline std::string EncodedOutcome(const std::string& name, const nlohmann::json& params,
                                  const LabeledGraph& g, uint64_t budget) {
  try {
    const ProblemBundle b = instantiate(name, params, g);
    OracleOptions o;
    o.budget = budget;
    return FormatWeight(b.MapBack(brute_force_solve(*b.instance, b.constraints, o).optimum));
  } catch (const LcsError& e) {
    if (e.code() == ErrorCode::kBudgetExceeded) return "skip";
    return std::string("throw:") + ErrorCodeName(e.code());
  }
}

// Domination on g as a problem on the complete graph with 0/1 edge labels:
// a vertex is fine when it or a neighbor across a 1-edge is selected.
struct LabeledDomination {
  std::shared_ptr<ProblemInstance> instance;
  std::shared_ptr<PartialNeighborhoodSystem> pns;
};

inline LabeledDomination DominationViaLabels(const LabeledGraph& g) {
  const int n = g.order();
  std::vector<EdgeSpec> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      edges.push_back({u, v, std::string(g.adjacent(u, v) ? "1" : "0")});
    }
  }
  auto inst = std::make_shared<ProblemInstance>();
  inst->graph = LabeledGraph::Build(n, edges);
  inst->algebra = WeightAlgebra(AlgebraKind::kMinPlus);
  inst->color_names = {"0", "1"};
  set_uniform_lists(inst.get(), {0, 1}, [](Color c) { return Weight::Of(c); });
  const LabeledGraph kn = inst->graph;
  inst->check = [kn](const LocalColoring& lc) {
    int sum = lc.center_color;
    for (size_t h = 0; h < lc.members.size(); ++h) {
      if (kn.label(lc.center, lc.members[h]) == "1") sum += lc.colors[h];
    }
    return sum >= 1;
  };
  inst->problem_id = "domination-via-labels";
  auto pns = std::make_shared<FunctionalPns>();
  pns->label = "label-or";
  pns->size_fn = [](Vertex, Color) { return uint64_t{2}; };
  pns->combine_fn = [](Vertex, Color, NValue a, NValue b) { return a | b; };
  pns->make_fn = [kn](Vertex v, Color, Vertex u, Color j) -> NValue {
    return j == 1 && kn.label(v, u) == "1";
  };
  pns->accept_fn = [](Vertex, Color i, NValue x) { return i == 1 || x == 1; };
  return {inst, pns};
}

// Domination on g as a unit-label problem on the complete graph: vertex v
// picks the empty set or N[v], and must lie in some picked set.
inline std::shared_ptr<ProblemInstance> DominationViaSets(const LabeledGraph& g) {
  const int n = g.order();
  auto inst = std::make_shared<ProblemInstance>();
  inst->graph = complete_graph(n);
  inst->algebra = WeightAlgebra(AlgebraKind::kMinPlus);
  std::vector<uint32_t> sets{0};
  inst->color_names = {"{}"};
  inst->lists.resize(n);
  inst->costs.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    uint32_t m = 1u << v;
    for (Vertex u : g.neighbors(v)) m |= 1u << u;
    auto it = std::find(sets.begin(), sets.end(), m);
    if (it == sets.end()) {
      sets.push_back(m);
      inst->color_names.push_back("N[" + std::to_string(v) + "]");
      it = sets.end() - 1;
    }
    inst->lists[v] = {0, static_cast<Color>(it - sets.begin())};
    inst->costs[v] = {Weight::Of(0), Weight::Of(1)};
  }
  inst->check = [sets](const LocalColoring& lc) {
    uint32_t covered = sets[lc.center_color];
    for (Color c : lc.colors) covered |= sets[c];
    return (covered >> lc.center & 1) != 0;
  };
  inst->problem_id = "domination-via-sets";
  return inst;
}

// Random list coloring of K_n whose check depends only on color counts.
inline std::shared_ptr<ProblemInstance> RandomCountInstance(std::mt19937_64& rng, int n, int colors) {
  auto inst = std::make_shared<ProblemInstance>();
  inst->graph = complete_graph(n);
  inst->algebra = WeightAlgebra(AlgebraKind::kMinPlus);
  for (int c = 0; c < colors; ++c) inst->color_names.push_back("c" + std::to_string(c));
  inst->lists.resize(n);
  inst->costs.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Color c = 0; c < colors; ++c) {
      if (rng() % 4 == 0 && c + 1 < colors) continue;
      inst->lists[v].push_back(c);
      inst->costs[v].push_back(Weight::Of(static_cast<int64_t>(rng() % 5)));
    }
  }
  const uint64_t salt = rng();
  const int pct = 55 + static_cast<int>(rng() % 40);
  inst->check = [salt, colors, pct](const LocalColoring& lc) {
    std::vector<int> cnt(colors, 0);
    ++cnt[lc.center_color];
    for (Color c : lc.colors) ++cnt[c];
    uint64_t h = salt ^ (static_cast<uint64_t>(lc.center) * 0x9e3779b97f4a7c15ull) ^
                 (static_cast<uint64_t>(lc.center_color) << 40);
    for (int x : cnt) h = (h ^ static_cast<uint64_t>(x)) * 0x100000001b3ull;
    h ^= h >> 29;
    return static_cast<int>(h % 100) < pct;
  };
  return inst;
}

}  // namespace lcs::testing

#endif  // LCSOLVE_TESTS_SUPPORT_HPP_
