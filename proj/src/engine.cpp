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

#include "lcsolve/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <iterator>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "lcsolve/error.hpp"

namespace lcs {

namespace {

constexpr uint64_t kMinAsyncWork = 1 << 12;

uint32_t InsertBit(uint32_t mask, int p, bool bit) {
  const uint32_t low = mask & ((1u << p) - 1);
  const uint32_t high = (mask >> p) << (p + 1);
  return low | high | (bit ? 1u << p : 0u);
}

uint32_t EraseBit(uint32_t mask, int p) {
  const uint32_t low = mask & ((1u << p) - 1);
  const uint32_t high = (mask >> (p + 1)) << p;
  return low | high;
}

bool HasBit(uint32_t mask, int p) { return (mask >> p) & 1u; }

void PutVarint(std::string* out, uint64_t x) {
  while (x >= 0x80) {
    out->push_back(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out->push_back(static_cast<char>(x));
}

template <typename T>
void Insert(std::vector<T>* v, int p, T value) {
  v->insert(v->begin() + p, value);
}

template <typename T>
void Erase(std::vector<T>* v, int p) {
  v->erase(v->begin() + p);
}

// Renames nonzero ids in order of first appearance.
void Canon(std::vector<uint8_t>* ids) {
  uint8_t map[256] = {0};
  uint8_t next = 0;
  for (auto& x : *ids) {
    if (x == 0) continue;
    if (map[x] == 0) map[x] = ++next;
    x = map[x];
  }
}

struct DisjointSets {
  std::vector<int> p;
  explicit DisjointSets(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int Find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool Unite(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    p[b] = a;
    return true;
  }
};

// Restricted growth strings of length k, in lexicographic order.
std::vector<std::vector<uint8_t>> SetPartitions(int k) {
  std::vector<std::vector<uint8_t>> out;
  std::vector<uint8_t> a(k, 1);
  if (k == 0) return {a};
  std::function<void(int, int)> rec = [&](int i, int max) {
    if (i == k) {
      out.push_back(a);
      return;
    }
    for (int b = 1; b <= max + 1; ++b) {
      a[i] = static_cast<uint8_t>(b);
      rec(i + 1, std::max(max, b));
    }
  };
  a[0] = 1;
  rec(1, 1);
  return out;
}

using GlobalPair = std::pair<GlobalState, GlobalState>;

}  // namespace

struct DpEngine::Impl {
  struct NodeInfo {
    std::vector<uint32_t> adj;  // bag-position adjacency
    int pos = -1;        // introduce: position of v in the bag; forget: in the child bag
    bool memo = true;
    uint64_t subtree = 1;  // node count below and including this one
  };

  struct Entry {
    Weight w;
    int32_t c0 = -1;
    uint64_t c1 = 0;
    uint64_t c2 = 0;
  };

  std::shared_ptr<const ProblemInstance> inst;
  std::shared_ptr<const PartialNeighborhoodSystem> pns;
  EasyTreeDecomposition etd;
  std::vector<GlobalConstraint> constraints;
  SolveOptions options;
  WeightAlgebra alg;

  std::vector<NodeInfo> info;
  std::vector<std::unordered_map<std::string, Entry>> memo;

  // Child values of a join depend only on the bag colors and the global
  // states, so they are shared by every accumulator/mode pair.
  struct JoinSide {
    std::vector<Weight> vals;  // empty when the side was skipped
    std::vector<uint64_t> live;
    std::vector<std::vector<uint64_t>> digit_values;  // per position
    std::vector<std::vector<int>> ids;                // per live entry
  };
  struct JoinTables {
    std::vector<std::array<JoinSide, 2>> combos;
  };
  std::vector<std::unordered_map<std::string, std::shared_ptr<const JoinTables>>> join_cache;
  std::atomic<uint64_t> states{0};
  std::atomic<uint64_t> memo_hits{0};
  std::atomic<uint64_t> join_pairs{0};
  std::atomic<int> spare_threads{0};
  std::mutex trace_mu;

  Impl(std::shared_ptr<const ProblemInstance> i,
       std::shared_ptr<const PartialNeighborhoodSystem> p,
       const EasyTreeDecomposition& e, std::vector<GlobalConstraint> c,
       SolveOptions o)
      : inst(std::move(i)), pns(std::move(p)), etd(e),
        constraints(std::move(c)), options(o), alg(inst->algebra) {
    if (options.witness) options.memoize = true;
    spare_threads = std::max(0, options.threads - 1);
    if (etd.width() > 30) {
      throw LcsError(ErrorCode::kBudgetExceeded,
                     "decomposition width " + std::to_string(etd.width()) +
                         " exceeds the engine limit of 30");
    }
    if (static_cast<int>(constraints.size()) > kMaxGlobalConstraints) {
      throw LcsError(ErrorCode::kTooManyConstraints,
                     std::to_string(constraints.size()) + " constraints");
    }
    const LabeledGraph& g = inst->graph;
    info.resize(etd.num_nodes());
    memo.resize(etd.num_nodes());
    join_cache.resize(etd.num_nodes());
    for (int t = 0; t < etd.num_nodes(); ++t) {
      const EasyNode& nd = etd.nodes[t];
      for (Vertex v : nd.bag) {
        if (v < 0 || v >= g.order()) {
          throw LcsError(ErrorCode::kInvalidInput,
                         "decomposition mentions vertex " + std::to_string(v));
        }
      }
      NodeInfo& ni = info[t];
      const int k = static_cast<int>(nd.bag.size());
      ni.adj.assign(k, 0);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (a != b && g.adjacent(nd.bag[a], nd.bag[b])) ni.adj[a] |= 1u << b;
        }
      }
      if (nd.kind == NodeKind::kIntroduce) {
        ni.pos = Pos(nd.bag, nd.vertex);
      } else if (nd.kind == NodeKind::kForget) {
        ni.pos = Pos(etd.nodes[nd.children[0]].bag, nd.vertex);
      }
      // A forget child's state determines the parent state and color, so
      // caching it never hits.
      if (nd.parent >= 0 && etd.nodes[nd.parent].kind == NodeKind::kForget &&
          !options.witness) {
        ni.memo = false;
      }
    }
    std::vector<int> depth(etd.num_nodes(), -1);
    std::vector<int> order(etd.num_nodes());
    std::iota(order.begin(), order.end(), 0);
    auto depth_of = [&](int t) {
      int d = 0;
      int u = t;
      while (u >= 0 && depth[u] < 0) {
        u = etd.nodes[u].parent;
        ++d;
      }
      const int base = u >= 0 ? depth[u] : -1;
      for (u = t; u >= 0 && depth[u] < 0; u = etd.nodes[u].parent) depth[u] = base + d--;
    };
    for (int t : order) depth_of(t);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
    for (int t : order) {
      const int up = etd.nodes[t].parent;
      if (up >= 0) info[up].subtree += info[t].subtree;
    }
  }

  static int Pos(const std::vector<Vertex>& bag, Vertex v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    return static_cast<int>(it - bag.begin());
  }

  Color ColorAt(int node, const DPState& s, int p) const {
    return inst->lists[etd.nodes[node].bag[p]][s.color[p]];
  }

  NValue Combine(Vertex v, Color i, NValue a, NValue b) const {
    const NValue r = pns->combine(v, i, a, b);
    if (options.validate_domains) CheckDomain(v, i, r);
    return r;
  }

  NValue Make(Vertex v, Color i, Vertex u, Color j) const {
    const NValue r = pns->make(v, i, u, j);
    if (options.validate_domains) CheckDomain(v, i, r);
    return r;
  }

  void CheckDomain(Vertex v, Color i, NValue x) const {
    if (x >= pns->domain_size(v, i)) {
      throw LcsError(ErrorCode::kInvalidInput,
                     "value " + std::to_string(x) + " outside N(" +
                         std::to_string(v) + "," + inst->color_names[i] + ")");
    }
  }

  bool Passes(Vertex v, Color i, NValue mode, NValue n) const {
    return mode == kFinal ? pns->accept(v, i, n) : n == mode;
  }

  NValue BagNs(int node, const DPState& s, int p) const {
    const EasyNode& nd = etd.nodes[node];
    const Vertex v = nd.bag[p];
    const Color i = ColorAt(node, s, p);
    NValue acc = pns->neutral(v, i);
    const uint32_t nb = info[node].adj[p];
    const bool p_removed = HasBit(s.removed, p);
    for (int q = 0; q < static_cast<int>(nd.bag.size()); ++q) {
      if (!HasBit(nb, q)) continue;
      if (p_removed && HasBit(s.removed, q)) continue;
      acc = Combine(v, i, acc, Make(v, i, nd.bag[q], ColorAt(node, s, q)));
    }
    return acc;
  }

  Weight Charge(int node, const DPState& s, int p) const {
    if (!HasBit(s.charged, p)) return alg.neutral();
    const Vertex v = etd.nodes[node].bag[p];
    return inst->costs[v][s.color[p]];
  }

  std::string JoinKey(const DPState& s) const {
    std::string k;
    for (int c : s.color) PutVarint(&k, c);
    for (const GlobalState& g : s.globals) {
      PutVarint(&k, g.q);
      PutVarint(&k, g.q_target + 1);
      PutVarint(&k, (g.empty ? 1 : 0) | (g.target_mode ? 2 : 0));
      for (uint8_t c : g.comp) k.push_back(static_cast<char>(c));
      for (uint8_t c : g.label) k.push_back(static_cast<char>(c));
    }
    return k;
  }

  JoinSide MakeSide(std::vector<Weight> vals, const std::vector<uint64_t>& radix) const {
    JoinSide side;
    const int k = static_cast<int>(radix.size());
    side.digit_values.resize(k);
    std::vector<std::map<uint64_t, int>> index(k);
    for (uint64_t t = 0; t < vals.size(); ++t) {
      if (vals[t].error) continue;
      side.live.push_back(t);
      std::vector<int> id(k);
      uint64_t rest = t;
      for (int p = k - 1; p >= 0; --p) {
        const uint64_t d = rest % radix[p];
        rest /= radix[p];
        auto [it, fresh] = index[p].emplace(d, static_cast<int>(index[p].size()));
        if (fresh) side.digit_values[p].push_back(d);
        id[p] = it->second;
      }
      side.ids.push_back(std::move(id));
    }
    side.vals = std::move(vals);
    return side;
  }

  std::string Key(const DPState& s) const {
    std::string k;
    k.reserve(8 + s.color.size() * 4);
    PutVarint(&k, s.removed);
    PutVarint(&k, s.charged);
    for (int c : s.color) PutVarint(&k, c);
    for (NValue a : s.acc) PutVarint(&k, a);
    for (NValue m : s.mode) PutVarint(&k, m == kFinal ? 0 : m + 1);
    for (const GlobalState& g : s.globals) {
      PutVarint(&k, g.q);
      PutVarint(&k, g.q_target + 1);
      PutVarint(&k, (g.empty ? 1 : 0) | (g.target_mode ? 2 : 0));
      for (uint8_t c : g.comp) k.push_back(static_cast<char>(c));
      for (uint8_t c : g.label) k.push_back(static_cast<char>(c));
    }
    return k;
  }

  // ---- global constraint transitions ----

  static bool AnyTracked(const GlobalState& g) {
    return std::any_of(g.comp.begin(), g.comp.end(),
                       [](uint8_t c) { return c != 0; });
  }

  static void CanonGlobal(GlobalState* g) {
    Canon(&g->comp);
    Canon(&g->label);
  }

  // Forget seen top-down: v joins the bag at child position p.
  bool GlobalForget(const GlobalConstraint& gc, GlobalState* g, int child_node,
                    int p, Color i) const {
    const bool tracked = gc.tracks(i);
    if (gc.kind == GlobalConstraint::Kind::kSize) {
      if (tracked) g->q = gc.automaton.delta[g->q];
      return true;
    }
    Insert<uint8_t>(&g->comp, p, 0);
    Insert<uint8_t>(&g->label, p, 0);
    if (!tracked) return true;
    if (g->empty) return false;
    const uint32_t nb = info[child_node].adj[p];
    std::vector<uint8_t> blocks;
    for (int q = 0; q < static_cast<int>(g->comp.size()); ++q) {
      if (HasBit(nb, q) && g->comp[q] != 0) blocks.push_back(g->comp[q]);
    }
    std::sort(blocks.begin(), blocks.end());
    if (gc.kind == GlobalConstraint::Kind::kAcyclic &&
        std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end()) {
      return false;
    }
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    if (blocks.empty()) {
      const uint8_t fresh = *std::max_element(g->comp.begin(), g->comp.end()) + 1;
      g->comp[p] = fresh;
      g->label[p] = 0;
    } else {
      uint8_t lab = 0;
      for (int q = 0; q < static_cast<int>(g->comp.size()); ++q) {
        if (g->comp[q] == 0 || g->label[q] == 0) continue;
        if (!std::binary_search(blocks.begin(), blocks.end(), g->comp[q])) continue;
        if (lab != 0 && lab != g->label[q]) return false;
        lab = g->label[q];
      }
      for (int q = 0; q < static_cast<int>(g->comp.size()); ++q) {
        if (g->comp[q] != 0 &&
            std::binary_search(blocks.begin(), blocks.end(), g->comp[q])) {
          g->comp[q] = blocks[0];
          g->label[q] = lab;
        }
      }
      g->comp[p] = blocks[0];
      g->label[p] = lab;
    }
    CanonGlobal(g);
    return true;
  }

  // Introduce seen top-down: the vertex at position p leaves the bag.
  bool GlobalIntroduce(const GlobalConstraint& gc, GlobalState* g, int p) const {
    if (gc.kind == GlobalConstraint::Kind::kSize) return true;
    const uint8_t block = g->comp[p];
    const uint8_t lab = g->label[p];
    Erase(&g->comp, p);
    Erase(&g->label, p);
    if (block == 0) return true;
    const bool block_survives =
        std::find(g->comp.begin(), g->comp.end(), block) != g->comp.end();
    if (!block_survives) {
      bool same_label = false;
      if (lab != 0) {
        for (size_t q = 0; q < g->comp.size(); ++q) {
          if (g->comp[q] != 0 && g->label[q] == lab) same_label = true;
        }
      }
      if (gc.kind == GlobalConstraint::Kind::kConnected) {
        if (g->target_mode) {
          if (lab == 0 || same_label) return false;
        } else if (AnyTracked(*g)) {
          return false;
        }
        if (!AnyTracked(*g)) {
          g->empty = true;
          g->target_mode = false;
          std::fill(g->label.begin(), g->label.end(), 0);
        }
      } else if (g->target_mode && same_label) {
        return false;
      }
    }
    CanonGlobal(g);
    return true;
  }

  bool GlobalLeaf(const GlobalConstraint& gc, const GlobalState& g) const {
    switch (gc.kind) {
      case GlobalConstraint::Kind::kSize:
        return g.q_target < 0 ? static_cast<bool>(gc.automaton.accepting[g.q])
                              : g.q == g.q_target;
      case GlobalConstraint::Kind::kConnected:
        if (g.comp[0] == 0) return true;
        if (g.empty) return false;
        return !(g.target_mode && g.label[0] == 0);
      case GlobalConstraint::Kind::kAcyclic:
        return true;
    }
    return true;
  }

  std::vector<GlobalPair> GlobalJoin(const GlobalConstraint& gc,
                                     const GlobalState& g, int node) const {
    std::vector<GlobalPair> out;
    if (gc.kind == GlobalConstraint::Kind::kSize) {
      for (int q = 0; q < gc.automaton.num_states(); ++q) {
        GlobalState r = g, s = g;
        r.q_target = q;
        s.q = q;
        out.emplace_back(std::move(r), std::move(s));
      }
      return out;
    }
    const bool connected = gc.kind == GlobalConstraint::Kind::kConnected;
    if (g.empty) {
      out.emplace_back(g, g);
      return out;
    }
    const int k = static_cast<int>(g.comp.size());
    if (!AnyTracked(g)) {
      if (!connected) {
        out.emplace_back(g, g);
      } else if (g.target_mode) {
        GlobalState e = g;
        e.empty = true;
        e.target_mode = false;
        out.emplace_back(e, e);
      } else {
        GlobalState e = g;
        e.empty = true;
        out.emplace_back(g, e);
        out.emplace_back(e, g);
      }
      return out;
    }
    // Components of the tracked bag vertices through bag edges alone.
    DisjointSets bag_ds(k);
    for (int a = 0; a < k; ++a) {
      if (g.comp[a] == 0) continue;
      for (int b = a + 1; b < k; ++b) {
        if (g.comp[b] != 0 && HasBit(info[node].adj[a], b)) bag_ds.Unite(a, b);
      }
    }
    std::vector<uint8_t> comp0(k, 0);
    for (int a = 0; a < k; ++a) {
      if (g.comp[a] != 0) comp0[a] = static_cast<uint8_t>(bag_ds.Find(a) + 1);
    }
    Canon(&comp0);
    const int k0 = *std::max_element(comp0.begin(), comp0.end());
    for (const auto& part : SetPartitions(k0)) {
      // r side: comp joined with the partition the s side will realize.
      DisjointSets ds(256);
      int merges = 0;
      std::vector<int> first_of(k0 + 1, -1);
      for (int a = 0; a < k; ++a) {
        if (comp0[a] == 0) continue;
        const int pb = part[comp0[a] - 1];
        if (first_of[pb] < 0) {
          first_of[pb] = a;
        } else if (ds.Unite(g.comp[first_of[pb]], g.comp[a])) {
          ++merges;
        }
      }
      if (!connected) {
        // Each partition block is a hyperedge over comp blocks; acyclic iff
        // every merge reduces the block count.
        std::vector<int> block_sizes(k0 + 1, 0);
        for (int b = 0; b < k0; ++b) ++block_sizes[part[b]];
        int need = 0;
        for (int x : block_sizes) need += x > 0 ? x - 1 : 0;
        if (need != merges) continue;
      }
      GlobalState r = g;
      bool ok = true;
      std::vector<uint8_t> root_label(256, 0);
      for (int a = 0; a < k && ok; ++a) {
        if (r.comp[a] == 0) continue;
        const int root = ds.Find(g.comp[a]);
        if (g.label[a] != 0) {
          if (root_label[root] != 0 && root_label[root] != g.label[a]) ok = false;
          root_label[root] = g.label[a];
        }
      }
      if (!ok) continue;
      for (int a = 0; a < k; ++a) {
        if (r.comp[a] == 0) continue;
        const int root = ds.Find(g.comp[a]);
        r.comp[a] = static_cast<uint8_t>(root);
        r.label[a] = root_label[root];
      }
      CanonGlobal(&r);
      GlobalState s = g;
      s.target_mode = true;
      s.comp = comp0;
      for (int a = 0; a < k; ++a) {
        s.label[a] = comp0[a] == 0 ? 0 : part[comp0[a] - 1];
      }
      CanonGlobal(&s);
      out.emplace_back(std::move(r), std::move(s));
    }
    return out;
  }

  std::vector<std::pair<std::vector<GlobalState>, std::vector<GlobalState>>>
  JoinCombos(int node, const DPState& s) const {
    std::vector<std::pair<std::vector<GlobalState>, std::vector<GlobalState>>>
        combos(1);
    for (size_t c = 0; c < constraints.size(); ++c) {
      auto options_c = GlobalJoin(constraints[c], s.globals[c], node);
      std::vector<std::pair<std::vector<GlobalState>, std::vector<GlobalState>>>
          next;
      next.reserve(combos.size() * options_c.size());
      for (const auto& base : combos) {
        for (const auto& [r, sg] : options_c) {
          auto e = base;
          e.first.push_back(r);
          e.second.push_back(sg);
          next.push_back(std::move(e));
        }
      }
      combos = std::move(next);
    }
    return combos;
  }

  // ---- child state construction ----

  // Returns false when a global constraint rejects the color.
  bool ForgetChild(int node, const DPState& s, int ci, DPState* out) const {
    const EasyNode& nd = etd.nodes[node];
    const int child = nd.children[0];
    const int p = info[node].pos;
    const Vertex v = nd.vertex;
    const Color i = inst->lists[v][ci];
    *out = s;
    out->removed = InsertBit(s.removed, p, false);
    out->charged = InsertBit(s.charged, p, true);
    Insert(&out->color, p, ci);
    Insert(&out->acc, p, pns->neutral(v, i));
    Insert(&out->mode, p, kFinal);
    for (size_t c = 0; c < constraints.size(); ++c) {
      if (!GlobalForget(constraints[c], &out->globals[c], child, p, i)) {
        return false;
      }
    }
    return true;
  }

  // Returns false when the introduced vertex fails its check.
  bool IntroduceChild(int node, const DPState& s, DPState* out) const {
    const EasyNode& nd = etd.nodes[node];
    const int p = info[node].pos;
    const Vertex v = nd.vertex;
    const Color i = ColorAt(node, s, p);
    const NValue nv = Combine(v, i, s.acc[p], BagNs(node, s, p));
    if (!Passes(v, i, s.mode[p], nv)) return false;
    *out = s;
    const bool v_removed = HasBit(s.removed, p);
    const uint32_t nb = info[node].adj[p];
    for (int q = 0; q < static_cast<int>(nd.bag.size()); ++q) {
      if (!HasBit(nb, q)) continue;
      if (v_removed && HasBit(s.removed, q)) continue;
      const Vertex u = nd.bag[q];
      const Color j = ColorAt(node, s, q);
      out->acc[q] = Combine(u, j, s.acc[q], Make(u, j, v, i));
    }
    out->removed = EraseBit(s.removed, p);
    out->charged = EraseBit(s.charged, p);
    Erase(&out->color, p);
    Erase(&out->acc, p);
    Erase(&out->mode, p);
    for (size_t c = 0; c < constraints.size(); ++c) {
      if (!GlobalIntroduce(constraints[c], &out->globals[c], p)) return false;
    }
    return true;
  }

  Weight Leaf(int node, const DPState& s) const {
    const EasyNode& nd = etd.nodes[node];
    const Vertex v = nd.bag[0];
    const Color i = ColorAt(node, s, 0);
    if (!Passes(v, i, s.mode[0], s.acc[0])) return Weight::Error();
    for (size_t c = 0; c < constraints.size(); ++c) {
      if (!GlobalLeaf(constraints[c], s.globals[c])) return Weight::Error();
    }
    return Charge(node, s, 0);
  }

  std::vector<uint64_t> JoinRadix(int node, const DPState& s) const {
    const EasyNode& nd = etd.nodes[node];
    std::vector<uint64_t> radix(nd.bag.size());
    for (size_t p = 0; p < nd.bag.size(); ++p) {
      radix[p] = pns->domain_size(nd.bag[p], ColorAt(node, s, p));
    }
    return radix;
  }

  DPState JoinChild(const DPState& s, const std::vector<uint64_t>& radix,
                    uint64_t tuple, const std::vector<GlobalState>& globals,
                    int child_node) const {
    const EasyNode& cn = etd.nodes[child_node];
    DPState out;
    const int k = static_cast<int>(radix.size());
    out.removed = k == 32 ? ~0u : (1u << k) - 1;
    out.charged = 0;
    out.color = s.color;
    out.acc.resize(k);
    out.mode.resize(k);
    for (int p = k - 1; p >= 0; --p) {
      out.mode[p] = tuple % radix[p];
      tuple /= radix[p];
      const Vertex v = cn.bag[p];
      out.acc[p] = pns->neutral(v, inst->lists[v][s.color[p]]);
    }
    out.globals = globals;
    return out;
  }

  std::string Describe(int node, const DPState& s) const {
    const EasyNode& nd = etd.nodes[node];
    std::ostringstream os;
    os << "t" << node << " " << NodeKindName(nd.kind) << " [";
    for (size_t p = 0; p < nd.bag.size(); ++p) {
      const Vertex v = nd.bag[p];
      const Color i = ColorAt(node, s, static_cast<int>(p));
      if (p) os << " ";
      os << v << ":" << inst->color_names[i];
      if (HasBit(s.removed, static_cast<int>(p))) os << "S";
      if (HasBit(s.charged, static_cast<int>(p))) os << "*";
      os << " " << pns->describe(v, i, s.acc[p]);
      if (s.mode[p] != kFinal) os << "=" << pns->describe(v, i, s.mode[p]);
    }
    os << "]";
    for (const GlobalState& g : s.globals) {
      os << " {q=" << g.q;
      if (g.q_target >= 0) os << "->" << g.q_target;
      if (g.empty) os << " empty";
      if (g.target_mode) os << " target";
      if (!g.comp.empty()) {
        os << " comp=";
        for (size_t p = 0; p < g.comp.size(); ++p) {
          os << static_cast<int>(g.comp[p]);
          if (g.target_mode) os << "/" << static_cast<int>(g.label[p]);
          if (p + 1 < g.comp.size()) os << ",";
        }
      }
      os << "}";
    }
    return os.str();
  }

  DPState RootState(int ci) const {
    const EasyNode& nd = etd.nodes[etd.root];
    const Vertex v = nd.bag[0];
    const Color i = inst->lists[v][ci];
    DPState s;
    s.removed = 0;
    s.charged = 1;
    s.color = {ci};
    s.acc = {pns->neutral(v, i)};
    s.mode = {kFinal};
    for (const GlobalConstraint& gc : constraints) {
      GlobalState g;
      g.q = gc.automaton.num_states() > 0 ? gc.automaton.start : 0;
      if (gc.kind == GlobalConstraint::Kind::kSize) {
        if (gc.tracks(i)) g.q = gc.automaton.delta[g.q];
      } else {
        g.comp = {static_cast<uint8_t>(gc.tracks(i) ? 1 : 0)};
        g.label = {0};
      }
      s.globals.push_back(std::move(g));
    }
    return s;
  }

  class Runner;
};

// Evaluates lambda with an explicit stack of frames. Each frame requests its
// children one at a time and receives their values back.
class DpEngine::Impl::Runner {
 public:
  explicit Runner(Impl* im) : im_(im) {}

  Weight Eval(int node, const DPState& state, bool memo_top) {
    std::optional<Weight> cached = memo_top ? Lookup(node, state, nullptr) : std::nullopt;
    if (cached) return *cached;
    std::deque<Frame> stack;
    Push(&stack, node, state, memo_top);
    std::optional<Weight> carry;
    while (true) {
      Frame& f = stack.back();
      Request req;
      const bool done = Step(&f, carry, &req);
      carry.reset();
      if (done) {
        Finish(f, req.value);
        const Weight w = req.value;
        stack.pop_back();
        if (stack.empty()) return w;
        carry = w;
        continue;
      }
      std::string key;
      if (auto hit = Lookup(req.node, req.state, &key)) {
        carry = *hit;
        continue;
      }
      Push(&stack, req.node, std::move(req.state), true, std::move(key));
    }
  }

 private:
  struct Frame {
    int node = -1;
    DPState st;
    std::string key;
    bool memo = false;
    bool started = false;
    Weight best = Weight::Error();
    Impl::Entry choice;
    Weight base;
    int ci = 0;
    int last_ci = -1;
    // join
    std::vector<std::pair<std::vector<GlobalState>, std::vector<GlobalState>>> combos;
    size_t combo = 0;
    int side = 0;
    uint64_t tuple = 0;
    uint64_t D = 0;
    std::vector<uint64_t> radix;
    std::vector<NValue> base_acc;
    std::vector<Weight> vals[2];
    std::future<std::vector<Weight>> pending;
    std::shared_ptr<std::atomic<bool>> cancel;
    bool async_s = false;
    std::shared_ptr<Impl::JoinTables> tables;
    std::string key_join;
  };

  struct Request {
    int node = -1;
    DPState state;
    Weight value;
  };

  std::optional<Weight> Lookup(int node, const DPState& s, std::string* key_out) {
    if (!im_->options.memoize || !im_->info[node].memo) return std::nullopt;
    std::string key = im_->Key(s);
    auto& table = im_->memo[node];
    auto it = table.find(key);
    if (it != table.end()) {
      ++im_->memo_hits;
      return it->second.w;
    }
    if (key_out) *key_out = std::move(key);
    return std::nullopt;
  }

  void Push(std::deque<Frame>* stack, int node, DPState state, bool memo,
            std::string key = {}) {
    Frame& f = stack->emplace_back();
    f.node = node;
    f.st = std::move(state);
    f.memo = memo && im_->options.memoize && im_->info[node].memo;
    if (f.memo) f.key = key.empty() ? im_->Key(f.st) : std::move(key);
  }

  void Finish(Frame& f, Weight w) {
    ++im_->states;
    if (im_->options.trace) {
      std::lock_guard<std::mutex> lock(im_->trace_mu);
      *im_->options.trace << im_->Describe(f.node, f.st) << " -> "
                          << FormatWeight(w) << "\n";
    }
    if (f.memo) {
      Impl::Entry e = f.choice;
      e.w = w;
      im_->memo[f.node].emplace(std::move(f.key), e);
    }
  }

  // Advances a frame. Returns true with req->value when the frame is done,
  // false with a child request otherwise.
  bool Step(Frame* f, std::optional<Weight> in, Request* req) {
    const EasyNode& nd = im_->etd.nodes[f->node];
    const WeightAlgebra& alg = im_->alg;
    switch (nd.kind) {
      case NodeKind::kLeaf:
        req->value = im_->Leaf(f->node, f->st);
        return true;
      case NodeKind::kIntroduce: {
        if (in) {
          req->value = alg.combine(f->base, *in);
          return true;
        }
        DPState child;
        if (!im_->IntroduceChild(f->node, f->st, &child)) {
          req->value = Weight::Error();
          return true;
        }
        f->base = im_->Charge(f->node, f->st, im_->info[f->node].pos);
        if (f->base.error) {
          req->value = f->base;
          return true;
        }
        req->node = nd.children[0];
        req->state = std::move(child);
        return false;
      }
      case NodeKind::kForget: {
        if (in && alg.strictly_better(*in, f->best)) {
          f->best = *in;
          f->choice.c0 = f->last_ci;
        }
        const int L = static_cast<int>(im_->inst->lists[nd.vertex].size());
        while (f->ci < L) {
          const int ci = f->ci++;
          DPState child;
          if (!im_->ForgetChild(f->node, f->st, ci, &child)) continue;
          f->last_ci = ci;
          req->node = nd.children[0];
          req->state = std::move(child);
          return false;
        }
        req->value = f->best;
        return true;
      }
      case NodeKind::kJoin:
        return StepJoin(f, in, req);
    }
    req->value = Weight::Error();
    return true;
  }

  bool StartJoin(Frame* f) {
    const EasyNode& nd = im_->etd.nodes[f->node];
    const WeightAlgebra& alg = im_->alg;
    f->started = true;
    f->base = alg.neutral();
    for (int p = 0; p < static_cast<int>(nd.bag.size()); ++p) {
      f->base = alg.combine(f->base, im_->Charge(f->node, f->st, p));
    }
    if (f->base.error) return false;
    f->radix = im_->JoinRadix(f->node, f->st);
    f->D = 1;
    for (uint64_t r : f->radix) {
      if (__builtin_mul_overflow(f->D, r, &f->D) ||
          f->D > im_->options.max_join_tuples) {
        throw LcsError(ErrorCode::kBudgetExceeded,
                       "join at node " + std::to_string(f->node) +
                           " would enumerate more than " +
                           std::to_string(im_->options.max_join_tuples) +
                           " accumulator tuples");
      }
    }
    f->base_acc.resize(nd.bag.size());
    for (int p = 0; p < static_cast<int>(nd.bag.size()); ++p) {
      const Vertex v = nd.bag[p];
      const Color i = im_->ColorAt(f->node, f->st, p);
      f->base_acc[p] = im_->Combine(v, i, f->st.acc[p], im_->BagNs(f->node, f->st, p));
    }
    f->combos = im_->JoinCombos(f->node, f->st);
    return true;
  }

  bool TryAcquireThread() {
    int cur = im_->spare_threads.load();
    while (cur > 0) {
      if (im_->spare_threads.compare_exchange_weak(cur, cur - 1)) return true;
    }
    return false;
  }

  void StartCombo(Frame* f) {
    f->side = 0;
    f->tuple = 0;
    f->vals[0].clear();
    f->vals[1].clear();
    f->async_s = false;
    const EasyNode& nd = im_->etd.nodes[f->node];
    const int child = nd.children[1];
    // Rough work estimate; spawning a thread costs more than a small side.
    if (f->D * im_->info[child].subtree < kMinAsyncWork) return;
    if (!TryAcquireThread()) return;
    std::vector<DPState> states;
    states.reserve(f->D);
    for (uint64_t b = 0; b < f->D; ++b) {
      states.push_back(im_->JoinChild(f->st, f->radix, b,
                                      f->combos[f->combo].second, child));
    }
    Impl* im = im_;
    f->cancel = std::make_shared<std::atomic<bool>>(false);
    f->pending = std::async(std::launch::async, [im, child, cancel = f->cancel,
                                                 states = std::move(states)] {
      std::vector<Weight> out;
      out.reserve(states.size());
      try {
        Runner sub(im);
        for (const DPState& s : states) {
          if (cancel->load(std::memory_order_relaxed)) break;
          out.push_back(sub.Eval(child, s, true));
        }
      } catch (...) {
        ++im->spare_threads;
        throw;
      }
      ++im->spare_threads;
      return out;
    });
    f->async_s = true;
  }

  bool StepJoin(Frame* f, std::optional<Weight> in, Request* req) {
    const EasyNode& nd = im_->etd.nodes[f->node];
    if (!f->started) {
      if (!StartJoin(f)) {
        req->value = Weight::Error();
        return true;
      }
      f->combo = 0;
      std::string jkey = im_->JoinKey(f->st);
      auto& cache = im_->join_cache[f->node];
      if (auto it = cache.find(jkey); it != cache.end()) {
        for (size_t c = 0; c < it->second->combos.size(); ++c) {
          f->combo = c;
          PairLoop(f, it->second->combos[c]);
        }
        req->value = f->best;
        return true;
      }
      f->tables = std::make_shared<Impl::JoinTables>();
      f->key_join = std::move(jkey);
      if (!f->combos.empty()) StartCombo(f);
    }
    if (in) f->vals[f->side].push_back(*in);
    while (f->combo < f->combos.size()) {
      if (f->tuple < f->D) {
        const uint64_t t = f->tuple++;
        const auto& globals = f->side == 0 ? f->combos[f->combo].first
                                           : f->combos[f->combo].second;
        req->node = nd.children[f->side];
        req->state = im_->JoinChild(f->st, f->radix, t, globals, req->node);
        return false;
      }
      if (f->side == 0) {
        const bool any = std::any_of(f->vals[0].begin(), f->vals[0].end(),
                                     [](Weight w) { return !w.error; });
        if (f->async_s) {
          // Same skip as the sequential path: the right side is only
          // needed when some left value is finite.
          if (!any) f->cancel->store(true, std::memory_order_relaxed);
          f->vals[1] = f->pending.get();
          if (!any) f->vals[1].clear();
          f->async_s = false;
        } else if (any) {
          f->side = 1;
          f->tuple = 0;
          continue;
        }
      }
      std::array<Impl::JoinSide, 2> sides = {
          im_->MakeSide(std::move(f->vals[0]), f->radix),
          im_->MakeSide(f->vals[1].size() == f->D ? std::move(f->vals[1])
                                                  : std::vector<Weight>{},
                        f->radix)};
      PairLoop(f, sides);
      f->tables->combos.push_back(std::move(sides));
      ++f->combo;
      if (f->combo < f->combos.size()) StartCombo(f);
    }
    if (im_->options.memoize) {
      im_->join_cache[f->node].emplace(std::move(f->key_join), std::move(f->tables));
    }
    req->value = f->best;
    return true;
  }

  // Minimizes W + r(a) + s(b) over good pairs, lexicographic in (a, b).
  void PairLoop(Frame* f, const std::array<Impl::JoinSide, 2>& sides) {
    const WeightAlgebra& alg = im_->alg;
    const EasyNode& nd = im_->etd.nodes[f->node];
    const int k = static_cast<int>(nd.bag.size());
    const Impl::JoinSide& A = sides[0];
    const Impl::JoinSide& B = sides[1];
    if (A.live.empty() || B.live.empty()) return;
    std::vector<std::vector<uint8_t>> good(k);
    for (int p = 0; p < k; ++p) {
      const Vertex v = nd.bag[p];
      const Color i = im_->ColorAt(f->node, f->st, p);
      const size_t nb = B.digit_values[p].size();
      good[p].assign(A.digit_values[p].size() * nb, 0);
      for (size_t ia = 0; ia < A.digit_values[p].size(); ++ia) {
        const NValue left = im_->Combine(v, i, f->base_acc[p], A.digit_values[p][ia]);
        for (size_t ib = 0; ib < nb; ++ib) {
          const NValue tot = im_->Combine(v, i, left, B.digit_values[p][ib]);
          good[p][ia * nb + ib] = im_->Passes(v, i, f->st.mode[p], tot) ? 1 : 0;
        }
      }
    }
    uint64_t pairs = 0;
    for (size_t x = 0; x < A.live.size(); ++x) {
      const Weight wa = alg.combine(f->base, A.vals[A.live[x]]);
      if (wa.error) continue;
      const std::vector<int>& ia = A.ids[x];
      for (size_t y = 0; y < B.live.size(); ++y) {
        const std::vector<int>& ib = B.ids[y];
        bool ok = true;
        for (int p = 0; p < k && ok; ++p) {
          ok = good[p][ia[p] * B.digit_values[p].size() + ib[p]] != 0;
        }
        if (!ok) continue;
        ++pairs;
        const Weight w = alg.combine(wa, B.vals[B.live[y]]);
        if (alg.strictly_better(w, f->best)) {
          f->best = w;
          f->choice.c0 = static_cast<int32_t>(f->combo);
          f->choice.c1 = A.live[x];
          f->choice.c2 = B.live[y];
        }
      }
    }
    im_->join_pairs += pairs;
  }

  Impl* im_;
};

DpEngine::DpEngine(std::shared_ptr<const ProblemInstance> inst,
                   std::shared_ptr<const PartialNeighborhoodSystem> pns,
                   const EasyTreeDecomposition& etd,
                   std::vector<GlobalConstraint> constraints,
                   SolveOptions options)
    : impl_(std::make_unique<Impl>(std::move(inst), std::move(pns), etd,
                                   std::move(constraints), options)) {}

DpEngine::~DpEngine() = default;

const EasyTreeDecomposition& DpEngine::decomposition() const {
  return impl_->etd;
}

Weight DpEngine::Lambda(int node, const DPState& state) {
  return Impl::Runner(impl_.get()).Eval(node, state, true);
}

namespace {

void RequireKind(const EasyTreeDecomposition& etd, int node, NodeKind kind) {
  if (node < 0 || node >= etd.num_nodes() || etd.nodes[node].kind != kind) {
    throw LcsError(ErrorCode::kInvalidInput,
                   std::string("node is not a ") + NodeKindName(kind));
  }
}

}  // namespace

Weight DpEngine::eval_leaf(int node, const DPState& state) {
  RequireKind(impl_->etd, node, NodeKind::kLeaf);
  return Impl::Runner(impl_.get()).Eval(node, state, false);
}

Weight DpEngine::eval_forget(int node, const DPState& state) {
  RequireKind(impl_->etd, node, NodeKind::kForget);
  return Impl::Runner(impl_.get()).Eval(node, state, false);
}

Weight DpEngine::eval_introduce(int node, const DPState& state) {
  RequireKind(impl_->etd, node, NodeKind::kIntroduce);
  return Impl::Runner(impl_.get()).Eval(node, state, false);
}

Weight DpEngine::eval_join(int node, const DPState& state) {
  RequireKind(impl_->etd, node, NodeKind::kJoin);
  return Impl::Runner(impl_.get()).Eval(node, state, false);
}

NValue DpEngine::bag_ns(int node, const DPState& state, int pos) const {
  return impl_->BagNs(node, state, pos);
}

DPState DpEngine::RootState(int root_color_index) const {
  return impl_->RootState(root_color_index);
}

std::string DpEngine::DescribeState(int node, const DPState& state) const {
  return impl_->Describe(node, state);
}

SolveResult DpEngine::Solve() {
  Impl& im = *impl_;
  SolveResult res;
  res.stats.width = im.etd.width();
  res.stats.nodes = im.etd.num_nodes();
  const int n = im.inst->graph.order();
  if (n == 0) {
    res.optimum = im.alg.neutral();
    if (im.options.witness) res.witness = std::vector<Color>{};
    return res;
  }
  const Vertex rv = im.etd.nodes[im.etd.root].bag[0];
  const int L = static_cast<int>(im.inst->lists[rv].size());
  Weight best = Weight::Error();
  int best_ci = -1;
  for (int ci = 0; ci < L; ++ci) {
    const Weight w = Lambda(im.etd.root, im.RootState(ci));
    if (im.alg.strictly_better(w, best)) {
      best = w;
      best_ci = ci;
    }
  }
  res.optimum = best;
  if (im.options.witness && !best.error) {
    std::vector<Color> c(n, -1);
    std::vector<std::pair<int, DPState>> work = {{im.etd.root, im.RootState(best_ci)}};
    while (!work.empty()) {
      auto [t, s] = std::move(work.back());
      work.pop_back();
      const EasyNode& nd = im.etd.nodes[t];
      for (size_t p = 0; p < nd.bag.size(); ++p) {
        c[nd.bag[p]] = im.ColorAt(t, s, static_cast<int>(p));
      }
      if (nd.kind == NodeKind::kLeaf) continue;
      if (nd.kind == NodeKind::kIntroduce) {
        DPState child;
        im.IntroduceChild(t, s, &child);
        work.emplace_back(nd.children[0], std::move(child));
        continue;
      }
      const auto it = im.memo[t].find(im.Key(s));
      if (it == im.memo[t].end()) {
        throw LcsError(ErrorCode::kWitnessUnavailable, "missing memo entry");
      }
      const Impl::Entry& e = it->second;
      if (nd.kind == NodeKind::kForget) {
        DPState child;
        im.ForgetChild(t, s, e.c0, &child);
        work.emplace_back(nd.children[0], std::move(child));
      } else {
        const auto radix = im.JoinRadix(t, s);
        const auto combos = im.JoinCombos(t, s);
        const auto& combo = combos.at(e.c0);
        work.emplace_back(nd.children[0],
                          im.JoinChild(s, radix, e.c1, combo.first, nd.children[0]));
        work.emplace_back(nd.children[1],
                          im.JoinChild(s, radix, e.c2, combo.second, nd.children[1]));
      }
    }
    res.witness = std::move(c);
  }
  res.stats.states = im.states;
  res.stats.memo_hits = im.memo_hits;
  res.stats.join_pairs = im.join_pairs;
  return res;
}

namespace {

void CheckSolveInput(const ProblemInstance& inst, const EasyTreeDecomposition& etd) {
  if (inst.radius != 1) {
    throw LcsError(ErrorCode::kInvalidInput,
                   "engine needs radius 1; apply the power reduction first");
  }
  validate_instance(inst);
  if (inst.graph.order() == 0) return;
  const std::string bad = check_easy(etd);
  if (!bad.empty()) throw LcsError(ErrorCode::kInvalidInput, bad);
  const ValidationReport rep =
      validate_decomposition(inst.graph, etd.as_tree_decomposition());
  if (!rep.ok) {
    throw LcsError(ErrorCode::kInvalidInput, "decomposition: " + rep.message);
  }
}

}  // namespace

SolveResult solve(std::shared_ptr<const ProblemInstance> inst,
                  std::shared_ptr<const PartialNeighborhoodSystem> pns,
                  const EasyTreeDecomposition& etd, const SolveOptions& options) {
  return solve_with_globals(std::move(inst), std::move(pns), etd, {}, options);
}

SolveResult solve_with_globals(
    std::shared_ptr<const ProblemInstance> inst,
    std::shared_ptr<const PartialNeighborhoodSystem> pns,
    const EasyTreeDecomposition& etd,
    const std::vector<GlobalConstraint>& constraints,
    const SolveOptions& options) {
  CheckSolveInput(*inst, etd);
  for (const GlobalConstraint& gc : constraints) {
    for (Color c : gc.class_colors) {
      if (c < 0 || c >= inst->num_colors()) {
        throw LcsError(ErrorCode::kInvalidColor, "constraint color out of range");
      }
    }
  }
  DpEngine engine(std::move(inst), std::move(pns), etd, constraints, options);
  SolveResult res = engine.Solve();
  if (options.witness && res.optimum.error) {
    // No witness exists; callers asking for one see an empty optional.
    res.witness.reset();
  }
  return res;
}

double estimate_log_states(const ProblemInstance& inst,
                           const PartialNeighborhoodSystem& pns,
                           const EasyTreeDecomposition& etd) {
  const int n = inst.graph.order();
  std::vector<double> base(n), dom(n);
  for (Vertex v = 0; v < n; ++v) {
    uint64_t widest = 1;
    for (Color i : inst.lists[v]) widest = std::max(widest, pns.domain_size(v, i));
    dom[v] = std::log(static_cast<double>(widest));
    base[v] = std::log(static_cast<double>(std::max<size_t>(1, inst.lists[v].size()))) + dom[v];
  }
  if (etd.root < 0) return 0;
  std::vector<double> terms;
  // (node, vertices with targets)
  std::vector<std::pair<int, std::vector<Vertex>>> stack{{etd.root, {}}};
  while (!stack.empty()) {
    auto [t, targets] = std::move(stack.back());
    stack.pop_back();
    const EasyNode& nd = etd.nodes[t];
    double x = 0;
    for (Vertex v : nd.bag) {
      x += base[v];
      if (std::binary_search(targets.begin(), targets.end(), v)) x += dom[v];
    }
    terms.push_back(x);
    for (int c : nd.children) {
      if (c < 0) continue;
      std::vector<Vertex> next;
      const std::vector<Vertex>& from = nd.kind == NodeKind::kJoin ? nd.bag : targets;
      std::set_intersection(from.begin(), from.end(), etd.nodes[c].bag.begin(),
                            etd.nodes[c].bag.end(), std::back_inserter(next));
      stack.push_back({c, std::move(next)});
    }
  }
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0;
  for (double x : terms) sum += std::exp(x - top);
  return top + std::log(sum);
}

TreeDecomposition choose_decomposition(const ProblemInstance& inst,
                                       const PartialNeighborhoodSystem& pns) {
  const LabeledGraph& g = inst.graph;
  TreeDecomposition tree = heuristic_decomposition(g);
  TreeDecomposition path = linear_decomposition(g);
  if (g.order() == 0 || path.width() > 30) return tree;
  const double a = estimate_log_states(inst, pns, to_easy(g, tree));
  const double b = estimate_log_states(inst, pns, to_easy(g, path));
  return b < a ? path : tree;
}

std::vector<Color> extract_witness(const SolveResult& result) {
  if (result.optimum.error) {
    throw LcsError(ErrorCode::kWitnessUnavailable, "no proper coloring exists");
  }
  if (!result.witness) {
    throw LcsError(ErrorCode::kWitnessUnavailable, "solve ran without witness tracking");
  }
  return *result.witness;
}

}  // namespace lcs
