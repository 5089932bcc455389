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

#include "lcsolve/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "lcsolve/error.hpp"

namespace lcs {

namespace {

using json = nlohmann::json;

bool InClass(const GlobalConstraint& gc, Color c) {
  return std::find(gc.class_colors.begin(), gc.class_colors.end(), c) !=
         gc.class_colors.end();
}

// Union-find with a count of merges that closed a cycle.
struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

void Exceeds(uint64_t budget) {
  throw LcsError(ErrorCode::kBudgetExceeded,
                 "search space exceeds the budget of " + std::to_string(budget));
}

uint64_t SpaceSize(const std::vector<int>& radix, uint64_t budget) {
  uint64_t total = 1;
  for (int r : radix) {
    if (r == 0) return 0;
    if (total > budget / static_cast<uint64_t>(r)) Exceeds(budget);
    total *= r;
  }
  if (total > budget) Exceeds(budget);
  return total;
}

// Odometer over prod radix[i]; fn gets the digit vector.
void Odometer(const std::vector<int>& radix, uint64_t budget,
              const std::function<void(const std::vector<int>&)>& fn) {
  if (SpaceSize(radix, budget) == 0) return;
  std::vector<int> d(radix.size(), 0);
  while (true) {
    fn(d);
    size_t i = 0;
    while (i < d.size() && ++d[i] == radix[i]) d[i++] = 0;
    if (i == d.size()) return;
  }
}

}  // namespace

bool satisfies_constraints(const ProblemInstance& inst, const std::vector<Color>& c,
                           const std::vector<GlobalConstraint>& constraints) {
  const LabeledGraph& g = inst.graph;
  for (const GlobalConstraint& gc : constraints) {
    std::vector<bool> in(g.order());
    int count = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
      in[v] = InClass(gc, c[v]);
      count += in[v];
    }
    switch (gc.kind) {
      case GlobalConstraint::Kind::kSize:
        if (!gc.automaton.accepts_length(count)) return false;
        break;
      case GlobalConstraint::Kind::kConnected: {
        if (count == 0) break;
        Vertex start = 0;
        while (!in[start]) ++start;
        std::vector<bool> seen(g.order(), false);
        std::vector<Vertex> stack = {start};
        seen[start] = true;
        int reached = 0;
        while (!stack.empty()) {
          const Vertex v = stack.back();
          stack.pop_back();
          ++reached;
          for (Vertex u : g.neighbors(v)) {
            if (in[u] && !seen[u]) {
              seen[u] = true;
              stack.push_back(u);
            }
          }
        }
        if (reached != count) return false;
        break;
      }
      case GlobalConstraint::Kind::kAcyclic: {
        Dsu dsu(g.order());
        for (const Edge& e : g.edges()) {
          if (in[e.u] && in[e.v] && !dsu.unite(e.u, e.v)) return false;
        }
        break;
      }
    }
  }
  return true;
}

OracleResult brute_force_solve(const ProblemInstance& inst,
                               const std::vector<GlobalConstraint>& constraints,
                               const OracleOptions& options) {
  validate_instance(inst);
  const LabeledGraph& g = inst.graph;
  const int n = g.order();
  std::vector<int> radix(n);
  for (Vertex v = 0; v < n; ++v) radix[v] = static_cast<int>(inst.lists[v].size());

  // true balls, computed once
  std::vector<std::vector<Vertex>> ball(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : closed_ball(g, v, inst.radius)) {
      if (u != v) ball[v].push_back(u);
    }
  }

  OracleResult res;
  std::vector<Color> c(n);
  LocalColoring lc;
  Odometer(radix, options.budget, [&](const std::vector<int>& d) {
    ++res.enumerated;
    for (Vertex v = 0; v < n; ++v) c[v] = inst.lists[v][d[v]];
    for (Vertex v = 0; v < n; ++v) {
      lc.center = v;
      lc.center_color = c[v];
      lc.members = ball[v];
      lc.colors.clear();
      for (Vertex u : ball[v]) lc.colors.push_back(c[u]);
      if (!inst.check(lc)) return;
    }
    if (!satisfies_constraints(inst, c, constraints)) return;
    Weight w = inst.algebra.neutral();
    for (Vertex v = 0; v < n; ++v) w = inst.algebra.combine(w, inst.costs[v][d[v]]);
    if (res.optimum.error || inst.algebra.strictly_better(w, res.optimum)) {
      res.optimum = w;
      res.optimal.clear();
    }
    if (options.collect && w == res.optimum && res.optimal.size() < options.max_collect) {
      res.optimal.push_back(c);
    }
  });
  return res;
}

Weight brute_force_grundy(const LabeledGraph& g, bool total) {
  const int n = g.order();
  if (n > 10) {
    throw LcsError(ErrorCode::kBudgetExceeded, "Grundy enumeration is limited to n <= 10");
  }
  std::vector<uint32_t> hood(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (!total) hood[v] |= 1u << v;
    for (Vertex u : g.neighbors(v)) hood[v] |= 1u << u;
  }
  const uint32_t all = n == 0 ? 0 : (1u << n) - 1;
  int best = -1;
  // Every legal sequence is explored; a sequence counts once it dominates.
  std::function<void(uint32_t, uint32_t, int)> grow = [&](uint32_t used, uint32_t covered,
                                                          int len) {
    if (covered == all) best = std::max(best, len);
    for (Vertex v = 0; v < n; ++v) {
      if (used >> v & 1) continue;
      if ((hood[v] & ~covered) == 0) continue;
      grow(used | 1u << v, covered | hood[v], len + 1);
    }
  };
  grow(0, 0, 0);
  return best < 0 ? Weight::Error() : Weight::Of(best);
}

namespace {

struct Native {
  const LabeledGraph& g;
  uint64_t budget;
  int n;
  std::vector<std::vector<int>> dist;

  Native(const LabeledGraph& graph, uint64_t b) : g(graph), budget(b), n(graph.order()) {
    for (Vertex v = 0; v < n; ++v) dist.push_back(bfs_distances(g, v));
  }

  bool Within(Vertex u, Vertex v, int r) const {
    return dist[u][v] >= 0 && dist[u][v] <= r;
  }

  // Best objective over f in [m]^n satisfying ok.
  Weight Best(int m, bool maximize,
              const std::function<bool(const std::vector<int>&)>& ok,
              const std::function<int64_t(const std::vector<int>&)>& value) const {
    std::optional<int64_t> best;
    Odometer(std::vector<int>(n, m), budget, [&](const std::vector<int>& f) {
      if (!ok(f)) return;
      const int64_t x = value(f);
      if (!best || (maximize ? x > *best : x < *best)) best = x;
    });
    return best ? Weight::Of(*best) : Weight::Error();
  }

  static int64_t Sum(const std::vector<int>& f) {
    return std::accumulate(f.begin(), f.end(), int64_t{0});
  }
  static int64_t Max(const std::vector<int>& f) {
    return f.empty() ? 0 : *std::max_element(f.begin(), f.end());
  }

  int SumOpen(const std::vector<int>& f, Vertex v) const {
    int s = 0;
    for (Vertex u : g.neighbors(v)) s += f[u];
    return s;
  }
  int SumClosed(const std::vector<int>& f, Vertex v) const { return f[v] + SumOpen(f, v); }

  template <typename P>
  bool All(P p) const {
    for (Vertex v = 0; v < n; ++v) {
      if (!p(v)) return false;
    }
    return true;
  }

  // Best over edge subsets.
  Weight BestEdges(bool maximize, const std::function<bool(const std::vector<int>&)>& ok) const {
    std::optional<int64_t> best;
    Odometer(std::vector<int>(g.size(), 2), budget, [&](const std::vector<int>& f) {
      if (!ok(f)) return;
      const int64_t x = Sum(f);
      if (!best || (maximize ? x > *best : x < *best)) best = x;
    });
    return best ? Weight::Of(*best) : Weight::Error();
  }

  std::vector<int> EdgeDegrees(const std::vector<int>& f) const {
    std::vector<int> d(n, 0);
    for (int i = 0; i < g.size(); ++i) {
      if (f[i]) {
        ++d[g.edges()[i].u];
        ++d[g.edges()[i].v];
      }
    }
    return d;
  }
};

int KParam(const json& p, int def = -1) {
  if (p.contains("k")) return p["k"].get<int>();
  if (def >= 0) return def;
  throw LcsError(ErrorCode::kMissingParameter, "missing parameter 'k'");
}

void NoIsolated(const LabeledGraph& g) {
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) throw LcsError(ErrorCode::kIsolatedVertex, "isolated vertex");
  }
}

bool InducedConnected(const LabeledGraph& g, const std::vector<int>& f) {
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (f[v]) members.push_back(v);
  }
  if (members.empty()) return true;
  std::vector<bool> seen(g.order(), false);
  std::vector<Vertex> stack = {members[0]};
  seen[members[0]] = true;
  size_t reached = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex u : g.neighbors(v)) {
      if (f[u] && !seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return reached == members.size();
}

}  // namespace

Weight native_optimum(const std::string& name, const json& params, const LabeledGraph& g,
                      uint64_t budget) {
  const json p = params.is_null() ? json::object() : params;
  Native x(g, budget);
  const int n = g.order();
  auto proper = [&](const std::vector<int>& f) {
    for (const Edge& e : g.edges()) {
      if (f[e.u] == f[e.v]) return false;
    }
    return true;
  };
  // colorings are 0-based here; objectives add 1 where colors start at 1
  if (name == "k-coloring") {
    return x.Best(KParam(p), false, proper, [](const auto& f) { return Native::Max(f) + (f.empty() ? 0 : 1); });
  }
  if (name == "k-chromatic-sum") {
    return x.Best(KParam(p), false, proper,
                  [](const auto& f) { return Native::Sum(f) + static_cast<int64_t>(f.size()); });
  }
  if (name == "list-coloring") {
    const json& lists = p.at("lists");
    std::vector<std::vector<std::string>> l(n);
    std::vector<int> radix(n);
    for (Vertex v = 0; v < n; ++v) {
      for (const json& t : lists[v % lists.size()]) {
        std::string s = t.is_string() ? t.get<std::string>() : t.dump();
        if (std::find(l[v].begin(), l[v].end(), s) == l[v].end()) l[v].push_back(s);
      }
      radix[v] = static_cast<int>(l[v].size());
    }
    bool found = false;
    Odometer(radix, budget, [&](const std::vector<int>& d) {
      if (found) return;
      for (const Edge& e : g.edges()) {
        if (l[e.u][d[e.u]] == l[e.v][d[e.v]]) return;
      }
      found = true;
    });
    return found ? Weight::Of(0) : Weight::Error();
  }
  if (name == "H-coloring") {
    const json& h = p.at("H");
    const int hn = h.at("n").get<int>();
    std::vector<std::vector<bool>> adj(hn, std::vector<bool>(hn, false));
    for (const json& e : h.value("edges", json::array())) {
      adj[e[0].get<int>()][e[1].get<int>()] = adj[e[1].get<int>()][e[0].get<int>()] = true;
    }
    return x.Best(hn, false,
                  [&](const auto& f) {
                    for (const Edge& e : g.edges()) {
                      if (!adj[f[e.u]][f[e.v]]) return false;
                    }
                    return true;
                  },
                  [](const auto&) { return 0; });
  }
  auto min_set = [&](const std::function<bool(const std::vector<int>&)>& ok) {
    return x.Best(2, false, ok, Native::Sum);
  };
  auto max_set = [&](const std::function<bool(const std::vector<int>&)>& ok) {
    return x.Best(2, true, ok, Native::Sum);
  };
  if (name == "k-tuple-domination" || name == "dominating-set") {
    const int k = name == "dominating-set" ? 1 : KParam(p);
    return min_set([&](const auto& f) { return x.All([&](Vertex v) { return x.SumClosed(f, v) >= k; }); });
  }
  if (name == "total-k-tuple-domination" || name == "total-domination") {
    const int k = name == "total-domination" ? 1 : KParam(p);
    return min_set([&](const auto& f) { return x.All([&](Vertex v) { return x.SumOpen(f, v) >= k; }); });
  }
  if (name == "k-domination") {
    const int k = KParam(p);
    return min_set([&](const auto& f) {
      return x.All([&](Vertex v) { return f[v] == 1 || x.SumOpen(f, v) >= k; });
    });
  }
  if (name == "{k}-domination") {
    const int k = KParam(p);
    return x.Best(k + 1, false,
                  [&](const auto& f) { return x.All([&](Vertex v) { return x.SumClosed(f, v) >= k; }); },
                  Native::Sum);
  }
  if (name == "k-rainbow-domination") {
    const int k = KParam(p);
    const int full = (1 << k) - 1;
    const bool empty_only = p.value("empty_only", false);
    return x.Best(1 << k, false,
                  [&](const auto& f) {
                    return x.All([&](Vertex v) {
                      if (empty_only && f[v] != 0) return true;
                      int u = empty_only ? 0 : f[v];
                      for (Vertex w : g.neighbors(v)) u |= f[w];
                      return u == full;
                    });
                  },
                  [](const auto& f) {
                    int64_t s = 0;
                    for (int m : f) s += std::popcount(static_cast<unsigned>(m));
                    return s;
                  });
  }
  if (name == "roman-domination") {
    return x.Best(3, false,
                  [&](const auto& f) {
                    return x.All([&](Vertex v) {
                      if (f[v] != 0) return true;
                      for (Vertex u : g.neighbors(v)) {
                        if (f[u] == 2) return true;
                      }
                      return false;
                    });
                  },
                  Native::Sum);
  }
  if (name == "double-roman-domination") {
    return x.Best(4, false,
                  [&](const auto& f) {
                    return x.All([&](Vertex v) {
                      int twos = 0, threes = 0;
                      for (Vertex u : g.neighbors(v)) {
                        twos += f[u] == 2;
                        threes += f[u] == 3;
                      }
                      if (f[v] == 0) return twos >= 2 || threes >= 1;
                      if (f[v] == 1) return twos + threes >= 1;
                      return true;
                    });
                  },
                  Native::Sum);
  }
  if (name == "semitotal-domination") {
    NoIsolated(g);
    return min_set([&](const auto& f) {
      return x.All([&](Vertex v) {
        if (!f[v]) return x.SumOpen(f, v) >= 1;
        for (Vertex u = 0; u < n; ++u) {
          if (u != v && f[u] && x.Within(u, v, 2)) return true;
        }
        return false;
      });
    });
  }
  if (name == "distance-domination") {
    const int k = KParam(p);
    return min_set([&](const auto& f) {
      return x.All([&](Vertex v) {
        for (Vertex u = 0; u < n; ++u) {
          if (f[u] && x.Within(u, v, k)) return true;
        }
        return false;
      });
    });
  }
  if (name == "connected-domination") {
    return min_set([&](const auto& f) {
      return x.All([&](Vertex v) { return x.SumClosed(f, v) >= 1; }) && InducedConnected(g, f);
    });
  }
  if (name == "independent-set" || name == "k-independent-set") {
    const int k = name == "independent-set" ? 1 : KParam(p);
    return max_set([&](const auto& f) {
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (f[u] && f[v] && x.Within(u, v, k)) return false;
        }
      }
      return true;
    });
  }
  if (name == "{k}-packing-function" || name == "{k}-limited-packing") {
    const int k = KParam(p);
    const int m = name == "{k}-packing-function" ? k + 1 : 2;
    return x.Best(m, true,
                  [&](const auto& f) { return x.All([&](Vertex v) { return x.SumClosed(f, v) <= k; }); },
                  Native::Sum);
  }
  if (name == "grundy-domination") return brute_force_grundy(g, false);
  if (name == "grundy-total-domination") return brute_force_grundy(g, true);
  if (name == "vertex-cover") {
    return min_set([&](const auto& f) {
      for (const Edge& e : g.edges()) {
        if (!f[e.u] && !f[e.v]) return false;
      }
      return true;
    });
  }
  if (name == "edge-cover") {
    NoIsolated(g);
    return x.BestEdges(false, [&](const auto& f) {
      const auto d = x.EdgeDegrees(f);
      return std::all_of(d.begin(), d.end(), [](int c) { return c >= 1; });
    });
  }
  if (name == "matching") {
    return x.BestEdges(true, [&](const auto& f) {
      const auto d = x.EdgeDegrees(f);
      return std::all_of(d.begin(), d.end(), [](int c) { return c <= 1; });
    });
  }
  if (name == "edge-domination") {
    return x.BestEdges(false, [&](const auto& f) {
      const auto d = x.EdgeDegrees(f);
      for (const Edge& e : g.edges()) {
        if (d[e.u] == 0 && d[e.v] == 0) return false;
      }
      return true;
    });
  }
  if (name == "chromatic-violation") {
    std::vector<bool> weak(g.size(), false);
    if (p.contains("weak")) {
      if (p["weak"].is_string()) {
        weak.assign(g.size(), true);
      } else {
        for (const json& e : p["weak"]) {
          const int idx = g.edge_index(e[0].get<int>(), e[1].get<int>());
          if (idx < 0) throw LcsError(ErrorCode::kEdgeNotInGraph, "weak edge not in graph");
          weak[idx] = true;
        }
      }
    }
    auto mono = [&](const std::vector<int>& f, bool want_weak) {
      int c = 0;
      for (int i = 0; i < g.size(); ++i) {
        const Edge& e = g.edges()[i];
        c += weak[i] == want_weak && f[e.u] == f[e.v];
      }
      return c;
    };
    return x.Best(KParam(p), false, [&](const auto& f) { return mono(f, false) == 0; },
                  [&](const auto& f) { return mono(f, true); });
  }
  if (name == "additive-coloring") {
    const int d = g.max_degree();
    const int eta = p.value("eta", std::max(1, d * d - d + 1));
    return x.Best(eta, false,
                  [&](const auto& f) {
                    for (const Edge& e : g.edges()) {
                      if (x.SumOpen(f, e.u) + g.degree(e.u) == x.SumOpen(f, e.v) + g.degree(e.v)) {
                        return false;
                      }
                    }
                    return true;
                  },
                  [](const auto& f) { return Native::Max(f) + (f.empty() ? 0 : 1); });
  }
  if (name == "L(h,k)-labeling") {
    const int h = p.at("h").get<int>(), k = p.at("k").get<int>();
    const int span = p.at("span").get<int>();
    return x.Best(span + 1, false,
                  [&](const auto& f) {
                    for (Vertex u = 0; u < n; ++u) {
                      for (Vertex v = u + 1; v < n; ++v) {
                        const int diff = std::abs(f[u] - f[v]);
                        if (x.dist[u][v] == 1 && diff < h) return false;
                        if (x.dist[u][v] == 2 && diff < k) return false;
                      }
                    }
                    return true;
                  },
                  Native::Max);
  }
  if (name == "packing-chromatic") {
    return x.Best(KParam(p), false,
                  [&](const auto& f) {
                    for (Vertex u = 0; u < n; ++u) {
                      for (Vertex v = u + 1; v < n; ++v) {
                        if (f[u] == f[v] && x.Within(u, v, f[u] + 1)) return false;
                      }
                    }
                    return true;
                  },
                  [](const auto& f) { return Native::Max(f) + (f.empty() ? 0 : 1); });
  }
  throw LcsError(ErrorCode::kUnknownProblem, "no native oracle for '" + name + "'");
}

}  // namespace lcs
