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

#include "lcsolve/catalog.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <map>

#include "lcsolve/error.hpp"

namespace lcs {

namespace {

using json = nlohmann::json;

int IntParam(const json& p, const char* key, std::optional<int> def, int lo,
             int hi = INT_MAX) {
  if (!p.contains(key)) {
    if (def) return *def;
    throw LcsError(ErrorCode::kMissingParameter,
                   std::string("missing parameter '") + key + "'");
  }
  const json& x = p[key];
  if (!x.is_number_integer()) {
    throw LcsError(ErrorCode::kInvalidParameter,
                   std::string("parameter '") + key + "' must be an integer");
  }
  const long long v = x.get<long long>();
  if (v < lo || v > hi) {
    throw LcsError(ErrorCode::kInvalidParameter,
                   std::string("parameter '") + key + "' out of range [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::string Token(const json& x) {
  return x.is_string() ? x.get<std::string>() : x.dump();
}

std::vector<std::string> RangeNames(int lo, int hi) {
  std::vector<std::string> out;
  for (int i = lo; i <= hi; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<Color> AllColors(int count) {
  std::vector<Color> out(count);
  for (int i = 0; i < count; ++i) out[i] = i;
  return out;
}

// Partially built entry. The system is created once the radius-1 instance
// exists.
struct Spec {
  ProblemInstance inst;
  std::function<std::shared_ptr<PartialNeighborhoodSystem>(
      std::shared_ptr<const ProblemInstance>)>
      make_pns;
  GraphTransform transform = GraphTransform::kNone;
  VertexMap origin;
  std::vector<std::string> connected_colors;
};

ProblemInstance Uniform(const LabeledGraph& g, AlgebraKind alg,
                        std::vector<std::string> names,
                        const std::function<Weight(Color)>& cost, CheckFn check) {
  ProblemInstance inst;
  inst.graph = g;
  inst.algebra = WeightAlgebra(alg);
  inst.color_names = std::move(names);
  set_uniform_lists(&inst, AllColors(static_cast<int>(inst.color_names.size())), cost);
  inst.check = std::move(check);
  return inst;
}

using SizeFn = std::function<uint64_t(Vertex, Color)>;
using CombineFn = std::function<NValue(Vertex, Color, NValue, NValue)>;
using MakeFn = std::function<NValue(Vertex, Color, Vertex, Color)>;
using AcceptFn = std::function<bool(Vertex, Color, NValue)>;

std::shared_ptr<PartialNeighborhoodSystem> Pns(std::string label, SizeFn size,
                                               NValue neutral, CombineFn combine,
                                               MakeFn make, AcceptFn accept) {
  auto p = std::make_shared<FunctionalPns>();
  p->label = std::move(label);
  p->size_fn = std::move(size);
  p->neutral_fn = [neutral](Vertex, Color) { return neutral; };
  p->combine_fn = std::move(combine);
  p->make_fn = std::move(make);
  p->accept_fn = std::move(accept);
  return p;
}

SizeFn ConstSize(uint64_t n) {
  return [n](Vertex, Color) { return n; };
}

CombineFn CapAdd(NValue cap) {
  return [cap](Vertex, Color, NValue a, NValue b) { return std::min(a + b, cap); };
}

CombineFn And() {
  return [](Vertex, Color, NValue a, NValue b) { return a & b; };
}

CombineFn Or() {
  return [](Vertex, Color, NValue a, NValue b) { return a | b; };
}

// Bool system where every neighbor must pass a pairwise test.
std::shared_ptr<PartialNeighborhoodSystem> AllPairs(
    std::string label, std::function<bool(Vertex, Color, Vertex, Color)> ok) {
  return Pns(std::move(label), ConstSize(2), 1, And(),
             [ok](Vertex v, Color i, Vertex u, Color j) -> NValue {
               return ok(v, i, u, j) ? 1 : 0;
             },
             [](Vertex, Color, NValue n) { return n == 1; });
}

template <typename F>
int SumMembers(const LocalColoring& lc, F value) {
  int s = 0;
  for (Color c : lc.colors) s += value(c);
  return s;
}

// ---- colorings ----

Spec Coloring(const LabeledGraph& g, int k, AlgebraKind alg) {
  Spec s;
  s.inst = Uniform(g, alg, RangeNames(1, k),
                   [](Color c) { return Weight::Of(c + 1); },
                   [](const LocalColoring& lc) {
                     for (Color c : lc.colors) {
                       if (c == lc.center_color) return false;
                     }
                     return true;
                   });
  s.make_pns = [](std::shared_ptr<const ProblemInstance>) {
    return AllPairs("distinct", [](Vertex, Color i, Vertex, Color j) { return i != j; });
  };
  return s;
}

Spec ListColoring(const LabeledGraph& g, const json& p) {
  if (!p.contains("lists")) {
    throw LcsError(ErrorCode::kMissingParameter, "missing parameter 'lists'");
  }
  const json& lists = p["lists"];
  if (!lists.is_array() || lists.empty()) {
    throw LcsError(ErrorCode::kInvalidParameter, "'lists' must be a nonempty array");
  }
  Spec s;
  s.inst.graph = g;
  s.inst.algebra = WeightAlgebra(AlgebraKind::kMinPlus);
  std::map<std::string, Color> ids;
  for (Vertex v = 0; v < g.order(); ++v) {
    const json& l = lists[v % lists.size()];
    if (!l.is_array() || l.empty()) {
      throw LcsError(ErrorCode::kInvalidParameter, "each list must be a nonempty array");
    }
    std::vector<Color> row;
    for (const json& x : l) {
      const std::string t = Token(x);
      auto [it, fresh] = ids.emplace(t, static_cast<Color>(ids.size()));
      if (fresh) s.inst.color_names.push_back(t);
      if (std::find(row.begin(), row.end(), it->second) == row.end()) {
        row.push_back(it->second);
      }
    }
    s.inst.lists.push_back(row);
    s.inst.costs.emplace_back(row.size(), Weight::Of(0));
  }
  s.inst.check = [](const LocalColoring& lc) {
    for (Color c : lc.colors) {
      if (c == lc.center_color) return false;
    }
    return true;
  };
  s.make_pns = [](std::shared_ptr<const ProblemInstance>) {
    return AllPairs("distinct", [](Vertex, Color i, Vertex, Color j) { return i != j; });
  };
  return s;
}

Spec HColoring(const LabeledGraph& g, const json& p) {
  if (!p.contains("H")) {
    throw LcsError(ErrorCode::kMissingParameter, "missing parameter 'H'");
  }
  const json& h = p["H"];
  const int hn = IntParam(h, "n", std::nullopt, 1, 64);
  auto adj = std::make_shared<std::vector<std::vector<bool>>>(
      hn, std::vector<bool>(hn, false));
  for (const json& e : h.value("edges", json::array())) {
    const int a = e.at(0).get<int>();
    const int b = e.at(1).get<int>();
    if (a < 0 || b < 0 || a >= hn || b >= hn) {
      throw LcsError(ErrorCode::kInvalidParameter, "H edge out of range");
    }
    (*adj)[a][b] = (*adj)[b][a] = true;
  }
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinPlus, RangeNames(0, hn - 1),
                   [](Color) { return Weight::Of(0); },
                   [adj](const LocalColoring& lc) {
                     for (Color c : lc.colors) {
                       if (!(*adj)[lc.center_color][c]) return false;
                     }
                     return true;
                   });
  s.make_pns = [adj](std::shared_ptr<const ProblemInstance>) {
    return AllPairs("H-adjacent", [adj](Vertex, Color i, Vertex, Color j) {
      return static_cast<bool>((*adj)[i][j]);
    });
  };
  return s;
}

// ---- sums over neighborhoods ----

// Colors 0..maxval with value = color id. pred sees the center value and the
// neighbor sum; the system saturates at cap and accept sees the capped sum.
Spec SumProblem(const LabeledGraph& g, AlgebraKind alg, int maxval,
                std::function<bool(int, int)> pred, int cap,
                std::function<bool(int, NValue)> accept) {
  Spec s;
  s.inst = Uniform(g, alg, RangeNames(0, maxval),
                   [](Color c) { return Weight::Of(c); },
                   [pred](const LocalColoring& lc) {
                     return pred(lc.center_color,
                                 SumMembers(lc, [](Color c) { return c; }));
                   });
  s.make_pns = [cap, accept](std::shared_ptr<const ProblemInstance>) {
    return Pns("capped-sum", ConstSize(cap + 1), 0, CapAdd(cap),
               [cap](Vertex, Color, Vertex, Color j) -> NValue {
                 return std::min<NValue>(j, cap);
               },
               [accept](Vertex, Color i, NValue n) { return accept(i, n); });
  };
  return s;
}

Spec Rainbow(const LabeledGraph& g, int k, bool empty_only) {
  std::vector<std::string> names;
  for (int m = 0; m < (1 << k); ++m) {
    std::string t = "{";
    for (int b = 0; b < k; ++b) {
      if (m >> b & 1) {
        if (t.size() > 1) t += ",";
        t += std::to_string(b + 1);
      }
    }
    names.push_back(t + "}");
  }
  const int full = (1 << k) - 1;
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinPlus, names,
                   [](Color c) { return Weight::Of(std::popcount(static_cast<unsigned>(c))); },
                   [full, empty_only](const LocalColoring& lc) {
                     if (empty_only && lc.center_color != 0) return true;
                     int u = lc.center_color;
                     for (Color c : lc.colors) u |= c;
                     return u == full;
                   });
  s.make_pns = [k, full, empty_only](std::shared_ptr<const ProblemInstance>) {
    return Pns("union", ConstSize(uint64_t{1} << k), 0, Or(),
               [](Vertex, Color, Vertex, Color j) -> NValue { return j; },
               [full, empty_only](Vertex, Color i, NValue n) {
                 if (empty_only && i != 0) return true;
                 return static_cast<int>(n | i) == full;
               });
  };
  return s;
}

Spec Roman(const LabeledGraph& g) {
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinPlus, RangeNames(0, 2),
                   [](Color c) { return Weight::Of(c); },
                   [](const LocalColoring& lc) {
                     if (lc.center_color != 0) return true;
                     return std::find(lc.colors.begin(), lc.colors.end(), 2) !=
                            lc.colors.end();
                   });
  s.make_pns = [](std::shared_ptr<const ProblemInstance>) {
    return Pns("any-2", ConstSize(2), 0, Or(),
               [](Vertex, Color, Vertex, Color j) -> NValue { return j == 2; },
               [](Vertex, Color i, NValue n) { return i != 0 || n == 1; });
  };
  return s;
}

Spec DoubleRoman(const LabeledGraph& g) {
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinPlus, RangeNames(0, 3),
                   [](Color c) { return Weight::Of(c); },
                   [](const LocalColoring& lc) {
                     int twos = 0, threes = 0;
                     for (Color c : lc.colors) {
                       twos += c == 2;
                       threes += c == 3;
                     }
                     if (lc.center_color == 0) return twos >= 2 || threes >= 1;
                     if (lc.center_color == 1) return twos + threes >= 1;
                     return true;
                   });
  // value = n1 + 3 * n2 with n1 in {0,1,2}, n2 in {0,1}
  s.make_pns = [](std::shared_ptr<const ProblemInstance>) {
    return Pns("double-roman", ConstSize(6), 0,
               [](Vertex, Color, NValue a, NValue b) -> NValue {
                 const NValue n1 = std::min<NValue>(a % 3 + b % 3, 2);
                 const NValue n2 = std::min<NValue>(a / 3 + b / 3, 1);
                 return n1 + 3 * n2;
               },
               [](Vertex, Color, Vertex, Color j) -> NValue {
                 return j == 2 ? 1 : j == 3 ? 3 : 0;
               },
               [](Vertex, Color i, NValue n) {
                 const NValue n1 = n % 3, n2 = n / 3;
                 if (i == 0 && !(n1 >= 2 || n2 >= 1)) return false;
                 if (i == 1 && n1 + n2 < 1) return false;
                 return true;
               });
  };
  return s;
}

void RequireNoIsolated(const LabeledGraph& g, const std::string& what) {
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) {
      throw LcsError(ErrorCode::kIsolatedVertex,
                     what + " needs a graph without isolated vertices (vertex " +
                         std::to_string(v) + ")");
    }
  }
}

Spec Semitotal(const LabeledGraph& g) {
  RequireNoIsolated(g, "semitotal domination");
  enum { kD1 = 0, kD2 = 1, kOut = 2, kNexus = 3 };
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinPlus, {"D1", "D2", "Dbar", "Dstar"},
                   [](Color c) { return Weight::Of(c == kD1 || c == kD2 ? 1 : 0); },
                   [](const LocalColoring& lc) {
                     int in_d = 0, nexus = 0;
                     for (Color c : lc.colors) {
                       in_d += c == kD1 || c == kD2;
                       nexus += c == kNexus;
                     }
                     switch (lc.center_color) {
                       case kOut:
                       case kD1: return in_d >= 1;
                       case kD2: return nexus >= 1;
                       default: return in_d >= 2;
                     }
                   });
  s.make_pns = [](std::shared_ptr<const ProblemInstance>) {
    return Pns("semitotal", ConstSize(3), 0, CapAdd(2),
               [](Vertex, Color i, Vertex, Color j) -> NValue {
                 if (i == kD2) return j == kNexus;
                 return j == kD1 || j == kD2;
               },
               [](Vertex, Color i, NValue n) { return i == kNexus ? n >= 2 : n >= 1; });
  };
  return s;
}

Spec DistanceNative(const LabeledGraph& g, int k) {
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinPlus, RangeNames(0, k),
                   [](Color c) { return Weight::Of(c == 0 ? 1 : 0); },
                   [](const LocalColoring& lc) {
                     if (lc.center_color == 0) return true;
                     for (Color c : lc.colors) {
                       if (c == lc.center_color - 1) return true;
                     }
                     return false;
                   });
  s.make_pns = [](std::shared_ptr<const ProblemInstance>) {
    return Pns("predecessor", ConstSize(2), 0, Or(),
               [](Vertex, Color i, Vertex, Color j) -> NValue { return j == i - 1; },
               [](Vertex, Color i, NValue n) { return i == 0 || n == 1; });
  };
  return s;
}

// Radius-r problems. The same check runs on true r-balls and on G^r.
Spec DistancePower(const LabeledGraph& g, int k) {
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinPlus, RangeNames(0, 1),
                   [](Color c) { return Weight::Of(c); },
                   [](const LocalColoring& lc) {
                     if (lc.center_color == 1) return true;
                     return std::find(lc.colors.begin(), lc.colors.end(), 1) !=
                            lc.colors.end();
                   });
  s.inst.radius = k;
  s.make_pns = [](std::shared_ptr<const ProblemInstance>) {
    return Pns("any-selected", ConstSize(2), 0, Or(),
               [](Vertex, Color, Vertex, Color j) -> NValue { return j == 1; },
               [](Vertex, Color i, NValue n) { return i == 1 || n == 1; });
  };
  return s;
}

Spec KIndependent(const LabeledGraph& g, int k) {
  Spec s = SumProblem(
      g, AlgebraKind::kMaxPlus, 1,
      [](int i, int sum) { return i == 0 || sum == 0; }, 1,
      [](int i, NValue n) { return i == 0 || n == 0; });
  s.inst.radius = k;
  return s;
}

std::shared_ptr<std::vector<std::vector<int>>> AllDistances(const LabeledGraph& g) {
  auto d = std::make_shared<std::vector<std::vector<int>>>();
  for (Vertex v = 0; v < g.order(); ++v) d->push_back(bfs_distances(g, v));
  return d;
}

Spec Lhk(const LabeledGraph& g, int h, int k, int span) {
  auto gp = std::make_shared<LabeledGraph>(g);
  auto ok = [gp, h, k](Vertex v, Color i, Vertex u, Color j) {
    const int diff = std::abs(i - j);
    if (gp->adjacent(v, u)) return diff >= h;
    if (k > 0 && diff < k) {
      for (Vertex w : gp->neighbors(v)) {
        if (gp->adjacent(w, u)) return false;
      }
    }
    return true;
  };
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinMax, RangeNames(0, span),
                   [](Color c) { return Weight::Of(c); },
                   [ok](const LocalColoring& lc) {
                     for (size_t x = 0; x < lc.members.size(); ++x) {
                       if (!ok(lc.center, lc.center_color, lc.members[x], lc.colors[x])) {
                         return false;
                       }
                     }
                     return true;
                   });
  s.inst.radius = k > 0 ? 2 : 1;
  s.make_pns = [ok](std::shared_ptr<const ProblemInstance>) {
    return AllPairs("separation", ok);
  };
  return s;
}

Spec PackingChromatic(const LabeledGraph& g, int k) {
  auto dist = AllDistances(g);
  // color c stands for class c + 1
  auto ok = [dist](Vertex v, Color i, Vertex u, Color j) {
    const int d = (*dist)[v][u];
    return !(i == j && d >= 0 && d <= i + 1);
  };
  Spec s;
  s.inst = Uniform(g, AlgebraKind::kMinMax, RangeNames(1, k),
                   [](Color c) { return Weight::Of(c + 1); },
                   [ok](const LocalColoring& lc) {
                     for (size_t x = 0; x < lc.members.size(); ++x) {
                       if (!ok(lc.center, lc.center_color, lc.members[x], lc.colors[x])) {
                         return false;
                       }
                     }
                     return true;
                   });
  s.inst.radius = k;
  s.make_pns = [ok](std::shared_ptr<const ProblemInstance>) {
    return AllPairs("packing", ok);
  };
  return s;
}

// ---- Grundy domination ----

// Colors are pairs (p, f) with p in 1..n+1 (n+1 meaning absent) and f in 1..n.
Spec Grundy(const LabeledGraph& g, bool total) {
  const int n = g.order();
  const int bottom = n + 1;
  auto pair_p = std::make_shared<std::vector<int>>();
  auto pair_f = std::make_shared<std::vector<int>>();
  Spec s;
  s.inst.graph = g;
  s.inst.algebra = WeightAlgebra(AlgebraKind::kMaxPlus);
  for (int p = 1; p <= bottom; ++p) {
    for (int f = 1; f <= n; ++f) {
      pair_p->push_back(p);
      pair_f->push_back(f);
      s.inst.color_names.push_back((p == bottom ? std::string("_") : std::to_string(p)) +
                                   "," + std::to_string(f));
    }
  }
  std::vector<Color> list;
  std::vector<Weight> costs;
  for (Color c = 0; c < static_cast<Color>(pair_p->size()); ++c) {
    const int p = (*pair_p)[c], f = (*pair_f)[c];
    // Pairs failing the check for every neighborhood are left out.
    if (p != bottom && (total ? f == p : f > p)) continue;
    list.push_back(c);
    costs.push_back(Weight::Of(p == bottom ? 0 : 1));
  }
  s.inst.lists.assign(n, list);
  s.inst.costs.assign(n, costs);
  s.inst.check = [pair_p, pair_f, bottom, total](const LocalColoring& lc) {
    const int pv = (*pair_p)[lc.center_color], fv = (*pair_f)[lc.center_color];
    int footprinters = 0;
    bool footprints = false;
    auto visit = [&](Color c) {
      const int pu = (*pair_p)[c], fu = (*pair_f)[c];
      if (fv == pu) ++footprinters;
      if (fv > pu) return false;
      if (pv == fu) footprints = true;
      return true;
    };
    if (!total && !visit(lc.center_color)) return false;
    for (Color c : lc.colors) {
      if (!visit(c)) return false;
      if (pv != bottom && (*pair_p)[c] == pv) return false;
    }
    if (footprinters != 1) return false;
    return pv == bottom || footprints;
  };
  // value = n1 + 3 * (n2 + 2 * (n3 + 2 * n4))
  s.make_pns = [pair_p, pair_f, bottom, total](std::shared_ptr<const ProblemInstance>) {
    auto enc = [](NValue n1, NValue n2, NValue n3, NValue n4) {
      return n1 + 3 * (n2 + 2 * (n3 + 2 * n4));
    };
    return Pns(
        total ? "grundy-total" : "grundy", ConstSize(24), enc(0, 1, 0, 1),
        [enc](Vertex, Color, NValue a, NValue b) -> NValue {
          return enc(std::min<NValue>(a % 3 + b % 3, 2), (a / 3 % 2) & (b / 3 % 2),
                     (a / 6 % 2) | (b / 6 % 2), (a / 12) & (b / 12));
        },
        [pair_p, pair_f, enc](Vertex, Color i, Vertex, Color j) -> NValue {
          const int pv = (*pair_p)[i], fv = (*pair_f)[i];
          const int pu = (*pair_p)[j], fu = (*pair_f)[j];
          return enc(fv == pu, fv <= pu, pv == fu, pv != pu);
        },
        [pair_p, pair_f, bottom, total](Vertex, Color i, NValue n) {
          const int p = (*pair_p)[i], f = (*pair_f)[i];
          const NValue n1 = n % 3, n2 = n / 3 % 2, n3 = n / 6 % 2, n4 = n / 12;
          if (total) {
            return n1 == 1 && n2 == 1 && (p == bottom || (n3 == 1 && n4 == 1));
          }
          if (n1 >= 2 || (n1 == 1 && f == p) || (n1 == 0 && f != p)) return false;
          if (!(n2 == 1 && f <= p)) return false;
          return p == bottom || ((n3 == 1 || p == f) && n4 == 1);
        });
  };
  return s;
}

// ---- problems on J(G) and S(G) ----

Spec EdgeProblem(const LabeledGraph& g, const std::string& kind) {
  if (kind == "edge-cover") RequireNoIsolated(g, "edge cover");
  TransformedGraph tg = transform_jagged(g);
  auto is_edge = std::make_shared<std::vector<bool>>();
  for (const VertexOrigin& o : tg.origin) {
    is_edge->push_back(o.kind == VertexOrigin::Kind::kEdge);
  }
  Spec s;
  s.transform = GraphTransform::kJagged;
  s.origin = tg.origin;
  s.inst.graph = tg.graph;
  s.inst.color_names = {"0", "1"};
  const bool maximize = kind == "matching";
  s.inst.algebra = WeightAlgebra(maximize ? AlgebraKind::kMaxPlus : AlgebraKind::kMinPlus);
  // Which side carries the 0/1 choice.
  const bool vertex_choice = kind == "vertex-cover" || kind == "edge-domination";
  const bool edge_choice = kind != "vertex-cover";
  for (Vertex x = 0; x < tg.graph.order(); ++x) {
    const bool free = (*is_edge)[x] ? edge_choice : vertex_choice;
    s.inst.lists.push_back(free ? std::vector<Color>{0, 1} : std::vector<Color>{0});
    std::vector<Weight> w = {Weight::Of(0)};
    // Vertex marks in edge domination are bookkeeping and cost nothing.
    if (free) w.push_back(Weight::Of((*is_edge)[x] || kind == "vertex-cover" ? 1 : 0));
    s.inst.costs.push_back(w);
  }
  // Sums of the colors of neighbors of the given type.
  auto sum_of = [is_edge](const LocalColoring& lc, bool edges) {
    int t = 0;
    for (size_t x = 0; x < lc.members.size(); ++x) {
      if ((*is_edge)[lc.members[x]] == edges) t += lc.colors[x];
    }
    return t;
  };
  if (kind == "vertex-cover") {
    s.inst.check = [is_edge, sum_of](const LocalColoring& lc) {
      return !(*is_edge)[lc.center] || sum_of(lc, false) >= 1;
    };
  } else if (kind == "edge-cover") {
    s.inst.check = [is_edge, sum_of](const LocalColoring& lc) {
      return (*is_edge)[lc.center] || sum_of(lc, true) >= 1;
    };
  } else if (kind == "matching") {
    s.inst.check = [is_edge, sum_of](const LocalColoring& lc) {
      return (*is_edge)[lc.center] || sum_of(lc, true) <= 1;
    };
  } else {
    s.inst.check = [is_edge, sum_of](const LocalColoring& lc) {
      if ((*is_edge)[lc.center]) return lc.center_color + sum_of(lc, false) >= 1;
      return lc.center_color == 0 || sum_of(lc, true) >= 1;
    };
  }
  const NValue cap = kind == "matching" ? 2 : 1;
  s.make_pns = [is_edge, kind, cap](std::shared_ptr<const ProblemInstance>) {
    return Pns(
        kind, ConstSize(cap + 1), 0, CapAdd(cap),
        [is_edge, kind](Vertex x, Color, Vertex u, Color j) -> NValue {
          // edge-vertices look at endpoints; vertices look at incident edges
          if ((*is_edge)[x]) return (*is_edge)[u] ? 0 : j;
          return (*is_edge)[u] ? j : 0;
        },
        [is_edge, kind](Vertex x, Color i, NValue n) {
          const bool e = (*is_edge)[x];
          if (kind == "vertex-cover") return !e || n >= 1;
          if (kind == "edge-cover") return e || n >= 1;
          if (kind == "matching") return e || n <= 1;
          return e ? i + n >= 1 : (i == 0 || n >= 1);
        });
  };
  return s;
}

Spec ChromaticViolation(const LabeledGraph& g, const json& p) {
  const int k = IntParam(p, "k", std::nullopt, 1, 16);
  std::vector<bool> weak(g.size(), false);
  if (p.contains("weak")) {
    const json& w = p["weak"];
    if (w.is_string() && w.get<std::string>() == "all") {
      weak.assign(g.size(), true);
    } else if (w.is_array()) {
      for (const json& e : w) {
        if (!e.is_array() || e.size() != 2) {
          throw LcsError(ErrorCode::kInvalidParameter, "weak edges are [u, v] pairs");
        }
        const int a = e[0].get<int>(), b = e[1].get<int>();
        const int idx = (a >= 0 && b >= 0 && a < g.order() && b < g.order())
                            ? g.edge_index(a, b)
                            : -1;
        if (idx < 0) {
          throw LcsError(ErrorCode::kEdgeNotInGraph,
                         "weak edge " + std::to_string(a) + "-" + std::to_string(b) +
                             " is not an edge");
        }
        weak[idx] = true;
      }
    } else {
      throw LcsError(ErrorCode::kInvalidParameter, "'weak' must be an array or \"all\"");
    }
  }
  TransformedGraph tg = transform_subdivision(g);
  const int n = g.order();
  auto origin = std::make_shared<VertexMap>(tg.origin);
  auto edges = std::make_shared<std::vector<Edge>>(g.edges());
  auto weak_p = std::make_shared<std::vector<bool>>(weak);
  Spec s;
  s.transform = GraphTransform::kSubdivision;
  s.origin = tg.origin;
  s.inst.graph = tg.graph;
  s.inst.algebra = WeightAlgebra(AlgebraKind::kMinPlus);
  s.inst.color_names = RangeNames(1, k);
  // pair (a, b) has id k + a * k + b: a colors the lower endpoint
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      s.inst.color_names.push_back(std::to_string(a) + ":" + std::to_string(b));
    }
  }
  for (Vertex x = 0; x < tg.graph.order(); ++x) {
    std::vector<Color> l;
    std::vector<Weight> w;
    if (x < n) {
      for (int a = 0; a < k; ++a) {
        l.push_back(a);
        w.push_back(Weight::Of(0));
      }
    } else {
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          l.push_back(k + a * k + b);
          w.push_back(Weight::Of(a == b ? 1 : 0));
        }
      }
    }
    s.inst.lists.push_back(l);
    s.inst.costs.push_back(w);
  }
  auto endpoint_ok = [origin, edges, k](Vertex x, Color pair, Vertex u, Color j) {
    const Edge& e = (*edges)[(*origin)[x].index];
    const int a = (pair - k) / k, b = (pair - k) % k;
    return j == (u == std::min(e.u, e.v) ? a : b);
  };
  s.inst.check = [n, origin, weak_p, endpoint_ok, k](const LocalColoring& lc) {
    if (lc.center < n) return true;
    for (size_t x = 0; x < lc.members.size(); ++x) {
      if (!endpoint_ok(lc.center, lc.center_color, lc.members[x], lc.colors[x])) {
        return false;
      }
    }
    const int a = (lc.center_color - k) / k, b = (lc.center_color - k) % k;
    return (*weak_p)[(*origin)[lc.center].index] || a != b;
  };
  s.make_pns = [n, origin, weak_p, endpoint_ok, k](std::shared_ptr<const ProblemInstance>) {
    return Pns("endpoint-match", ConstSize(2), 1, And(),
               [n, endpoint_ok](Vertex x, Color i, Vertex u, Color j) -> NValue {
                 if (x < n) return 1;
                 return endpoint_ok(x, i, u, j) ? 1 : 0;
               },
               [n, origin, weak_p, k](Vertex x, Color i, NValue v) {
                 if (x < n) return true;
                 const int a = (i - k) / k, b = (i - k) % k;
                 return v == 1 && ((*weak_p)[(*origin)[x].index] || a != b);
               });
  };
  return s;
}

// ---- additive coloring ----

// Colors (m, s): m the vertex number, s the sum over its neighbors.
Spec Additive(const LabeledGraph& g, int eta) {
  const int delta = g.max_degree();
  const int smax = delta * eta;
  auto col_m = std::make_shared<std::vector<int>>();
  auto col_s = std::make_shared<std::vector<int>>();
  Spec s;
  s.inst.graph = g;
  s.inst.algebra = WeightAlgebra(AlgebraKind::kMinMax);
  for (int m = 1; m <= eta; ++m) {
    for (int t = 0; t <= smax; ++t) {
      col_m->push_back(m);
      col_s->push_back(t);
      s.inst.color_names.push_back(std::to_string(m) + "/" + std::to_string(t));
    }
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    const int d = g.degree(v);
    std::vector<Color> l;
    std::vector<Weight> w;
    for (Color c = 0; c < static_cast<Color>(col_m->size()); ++c) {
      // neighbor sums are confined to [d, d * eta]
      if ((*col_s)[c] < d || (*col_s)[c] > d * eta) continue;
      l.push_back(c);
      w.push_back(Weight::Of((*col_m)[c]));
    }
    s.inst.lists.push_back(l);
    s.inst.costs.push_back(w);
  }
  s.inst.check = [col_m, col_s](const LocalColoring& lc) {
    int sum = 0;
    for (Color c : lc.colors) {
      if ((*col_s)[c] == (*col_s)[lc.center_color]) return false;
      sum += (*col_m)[c];
    }
    return sum == (*col_s)[lc.center_color];
  };
  // value = distinct + 2 * sum; the sum saturates just above the center's
  // own target s, larger sums are all equally wrong
  s.make_pns = [col_m, col_s](std::shared_ptr<const ProblemInstance>) {
    auto top = [col_s](Color i) { return static_cast<NValue>((*col_s)[i] + 1); };
    return Pns("sum-and-distinct",
               [top](Vertex, Color i) { return 2 * (top(i) + 1); }, 1,
               [top](Vertex, Color i, NValue a, NValue b) -> NValue {
                 return ((a & 1) & (b & 1)) + 2 * std::min(a / 2 + b / 2, top(i));
               },
               [col_m, col_s, top](Vertex, Color i, Vertex, Color j) -> NValue {
                 return ((*col_s)[i] != (*col_s)[j] ? 1 : 0) +
                        2 * std::min<NValue>((*col_m)[j], top(i));
               },
               [col_s](Vertex, Color i, NValue n) {
                 return (n & 1) && static_cast<int>(n / 2) == (*col_s)[i];
               });
  };
  return s;
}

Spec Build(const std::string& name, const json& p, const LabeledGraph& g) {
  auto k_param = [&](int def_lo) { return IntParam(p, "k", std::nullopt, def_lo, 64); };
  if (name == "k-coloring") return Coloring(g, k_param(1), AlgebraKind::kMinMax);
  if (name == "k-chromatic-sum") return Coloring(g, k_param(1), AlgebraKind::kMinPlus);
  if (name == "list-coloring") return ListColoring(g, p);
  if (name == "H-coloring") return HColoring(g, p);
  if (name == "k-tuple-domination" || name == "dominating-set" ||
      name == "connected-domination") {
    const int k = name == "k-tuple-domination" ? k_param(1) : 1;
    Spec s = SumProblem(
        g, AlgebraKind::kMinPlus, 1, [k](int i, int sum) { return i + sum >= k; }, k,
        [k](int i, NValue n) { return static_cast<int>(n) + i >= k; });
    if (name == "connected-domination") s.connected_colors = {"1"};
    return s;
  }
  if (name == "total-k-tuple-domination" || name == "total-domination") {
    const int k = name == "total-domination" ? 1 : k_param(1);
    return SumProblem(
        g, AlgebraKind::kMinPlus, 1, [k](int, int sum) { return sum >= k; }, k,
        [k](int, NValue n) { return static_cast<int>(n) >= k; });
  }
  if (name == "k-domination") {
    const int k = k_param(1);
    return SumProblem(
        g, AlgebraKind::kMinPlus, 1, [k](int i, int sum) { return i != 0 || sum >= k; },
        k, [k](int i, NValue n) { return i != 0 || static_cast<int>(n) >= k; });
  }
  if (name == "{k}-domination") {
    const int k = k_param(1);
    return SumProblem(
        g, AlgebraKind::kMinPlus, k, [k](int i, int sum) { return i + sum >= k; }, k,
        [k](int i, NValue n) { return static_cast<int>(n) + i >= k; });
  }
  if (name == "k-rainbow-domination") {
    const int k = IntParam(p, "k", std::nullopt, 1, 8);
    return Rainbow(g, k, p.value("empty_only", false));
  }
  if (name == "roman-domination") return Roman(g);
  if (name == "double-roman-domination") return DoubleRoman(g);
  if (name == "independent-set") return KIndependent(g, 1);
  if (name == "{k}-packing-function" || name == "{k}-limited-packing") {
    const int k = k_param(1);
    const int maxval = name == "{k}-packing-function" ? k : 1;
    return SumProblem(
        g, AlgebraKind::kMaxPlus, maxval, [k](int i, int sum) { return i + sum <= k; },
        k + 1, [k](int i, NValue n) { return static_cast<int>(n) + i <= k; });
  }
  if (name == "semitotal-domination") return Semitotal(g);
  if (name == "distance-domination") {
    const int k = k_param(1);
    const std::string route = p.value("route", "native");
    if (route == "native") return DistanceNative(g, k);
    if (route == "power") return DistancePower(g, k);
    throw LcsError(ErrorCode::kInvalidParameter, "route must be native or power");
  }
  if (name == "k-independent-set") return KIndependent(g, k_param(1));
  if (name == "grundy-domination") return Grundy(g, false);
  if (name == "grundy-total-domination") return Grundy(g, true);
  if (name == "vertex-cover" || name == "edge-cover" || name == "matching" ||
      name == "edge-domination") {
    return EdgeProblem(g, name);
  }
  if (name == "chromatic-violation") return ChromaticViolation(g, p);
  if (name == "additive-coloring") {
    const int d = g.max_degree();
    return Additive(g, IntParam(p, "eta", std::max(1, d * d - d + 1), 1, 64));
  }
  if (name == "L(h,k)-labeling") {
    return Lhk(g, IntParam(p, "h", std::nullopt, 0, 64),
               IntParam(p, "k", std::nullopt, 0, 64),
               IntParam(p, "span", std::nullopt, 0, 256));
  }
  if (name == "packing-chromatic") return PackingChromatic(g, k_param(1));
  throw LcsError(ErrorCode::kUnknownProblem, "unknown problem '" + name + "'");
}

void ApplyCostOverride(ProblemInstance* inst, const json& costs) {
  if (!costs.is_array() || static_cast<int>(costs.size()) != inst->graph.order()) {
    throw LcsError(ErrorCode::kInvalidParameter,
                   "'costs' needs one array per vertex");
  }
  for (Vertex v = 0; v < inst->graph.order(); ++v) {
    const json& row = costs[v];
    if (!row.is_array() || row.size() != inst->lists[v].size()) {
      throw LcsError(ErrorCode::kInvalidParameter,
                     "'costs' row " + std::to_string(v) + " must match the list size " +
                         std::to_string(inst->lists[v].size()));
    }
    for (size_t i = 0; i < row.size(); ++i) {
      inst->costs[v][i] = Weight::Of(row[i].get<int64_t>());
    }
  }
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"k-coloring", "colors 1..k, minimize the largest color", {{"k", 3}}},
      {"k-chromatic-sum", "colors 1..k, minimize the color sum", {{"k", 3}}},
      {"list-coloring", "proper coloring from per-vertex lists (cycled)",
       {{"lists", json::array({json::array({1, 2}), json::array({2, 3}),
                               json::array({1, 3})})}}},
      {"H-coloring", "homomorphism into H",
       {{"H", {{"n", 5}, {"edges", json::array({json::array({0, 1}), json::array({1, 2}),
                                                json::array({2, 3}), json::array({3, 4}),
                                                json::array({4, 0})})}}}}},
      {"k-tuple-domination", "|N[v] & S| >= k", {{"k", 2}}},
      {"total-k-tuple-domination", "|N(v) & S| >= k", {{"k", 2}}},
      {"k-domination", "vertices outside S see k of S", {{"k", 2}}},
      {"{k}-domination", "f(N[v]) >= k with f in 0..k", {{"k", 2}}},
      {"k-rainbow-domination", "every closed neighborhood sees all k colors", {{"k", 2}}},
      {"roman-domination", "0-vertices need a neighbor labeled 2", json::object()},
      {"dominating-set", "minimum dominating set", json::object()},
      {"total-domination", "minimum total dominating set", json::object()},
      {"double-roman-domination", "labels 0..3", json::object()},
      {"semitotal-domination", "dominating, members pairwise within distance 2",
       json::object()},
      {"distance-domination", "every vertex within distance k of S", {{"k", 2}}},
      {"connected-domination", "dominating set inducing a connected subgraph",
       json::object()},
      {"independent-set", "maximum independent set", json::object()},
      {"k-independent-set", "members pairwise at distance > k", {{"k", 2}}},
      {"{k}-packing-function", "f(N[v]) <= k with f in 0..k, maximize", {{"k", 2}}},
      {"{k}-limited-packing", "|N[v] & S| <= k, maximize", {{"k", 2}}},
      {"grundy-domination", "longest legal dominating sequence", json::object()},
      {"grundy-total-domination", "longest legal total dominating sequence",
       json::object()},
      {"vertex-cover", "minimum vertex cover (on the jagged graph)", json::object()},
      {"edge-cover", "minimum edge cover (on the jagged graph)", json::object()},
      {"matching", "maximum matching (on the jagged graph)", json::object()},
      {"edge-domination", "minimum edge dominating set (on the jagged graph)",
       json::object()},
      {"chromatic-violation", "k-coloring minimizing monochromatic weak edges",
       {{"k", 2}, {"weak", "all"}}},
      {"additive-coloring", "neighbor sums differ on adjacent vertices", {{"eta", 3}}},
      {"L(h,k)-labeling", "labels 0..span with distance separations",
       {{"h", 2}, {"k", 1}, {"span", 5}}},
      {"packing-chromatic", "class i pairwise at distance > i", {{"k", 4}}},
  };
  return entries;
}

TreeDecomposition ProblemBundle::LiftDecomposition(const TreeDecomposition& td) const {
  switch (transform) {
    case GraphTransform::kSubdivision:
      return lift_edge_transform(input, td, EdgeTransformKind::kSubdivision);
    case GraphTransform::kJagged:
      return lift_edge_transform(input, td, EdgeTransformKind::kJagged);
    case GraphTransform::kNone:
      break;
  }
  if (instance->radius > 1) return lift_power(input, td, instance->radius);
  const ValidationReport rep = validate_decomposition(input, td);
  if (!rep.ok) throw LcsError(ErrorCode::kInvalidInput, rep.message);
  return td;
}

ProblemBundle instantiate(const std::string& name, const nlohmann::json& params,
                          const LabeledGraph& g) {
  const json p = params.is_null() ? json::object() : params;
  if (!p.is_object()) {
    throw LcsError(ErrorCode::kInvalidParameter, "parameters must be a JSON object");
  }
  Spec s;
  try {
    s = Build(name, p, g);
  } catch (const json::exception& e) {
    throw LcsError(ErrorCode::kInvalidParameter, e.what());
  }
  s.inst.problem_id = name;
  s.inst.params = p;
  if (p.contains("costs")) ApplyCostOverride(&s.inst, p["costs"]);
  validate_instance(s.inst);

  ProblemBundle b;
  b.name = name;
  b.params = p;
  b.input = g;
  b.transform = s.transform;
  b.origin = s.origin;
  auto inst = std::make_shared<const ProblemInstance>(std::move(s.inst));
  b.instance = inst;
  b.reduced = inst->radius > 1
                  ? std::make_shared<const ProblemInstance>(power_reduction(*inst))
                  : inst;
  b.pns = s.make_pns(b.reduced);
  if (!s.connected_colors.empty()) {
    std::vector<Color> cs;
    for (const auto& t : s.connected_colors) cs.push_back(inst->color_by_name(t));
    b.constraints.push_back(connected_constraint(cs));
  }
  if (p.contains("constraints")) {
    for (auto& c : constraints_from_json(p["constraints"], *inst)) {
      b.constraints.push_back(std::move(c));
    }
    if (static_cast<int>(b.constraints.size()) > kMaxGlobalConstraints) {
      throw LcsError(ErrorCode::kTooManyConstraints,
                     std::to_string(b.constraints.size()) + " constraints");
    }
  }
  return b;
}

SolveResult solve_problem(const ProblemBundle& b,
                          const std::optional<TreeDecomposition>& td,
                          const SolveOptions& options) {
  const LabeledGraph& graph = b.reduced->graph;
  const TreeDecomposition t =
      td ? b.LiftDecomposition(*td) : choose_decomposition(*b.reduced, *b.pns);
  const EasyTreeDecomposition etd = to_easy(graph, t);
  SolveResult r = solve_with_globals(b.reduced, b.pns, etd, b.constraints, options);
  r.optimum = b.MapBack(r.optimum);
  return r;
}

}  // namespace lcs
