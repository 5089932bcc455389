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

#include "lcsolve/treedec.hpp"

#include <algorithm>
#include <iterator>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "lcsolve/error.hpp"

namespace lcs {

namespace {

bool BagContains(const std::vector<Vertex>& bag, Vertex v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

std::vector<std::vector<int>> ChildLists(const std::vector<int>& parent) {
  std::vector<std::vector<int>> children(parent.size());
  for (size_t t = 0; t < parent.size(); ++t) {
    if (parent[t] >= 0) children[parent[t]].push_back(static_cast<int>(t));
  }
  return children;
}


// Hangs a child below an earlier leaf sibling whose bag holds the child's
// separator. The result has the same width and fewer join nodes.
void ChainSiblings(TreeDecomposition* td) {
  const int m = td->num_nodes();
  std::vector<std::vector<int>> kids(m);
  for (int t = 0; t < m; ++t) {
    if (td->parent[t] >= 0) kids[td->parent[t]].push_back(t);
  }
  for (int p = 0; p < m; ++p) {
    if (kids[p].size() < 2) continue;
    std::vector<int> order = kids[p];
    std::stable_partition(order.begin(), order.end(), [&](int c) { return kids[c].empty(); });
    std::vector<int> keep;
    int tail = -1;
    for (int c : order) {
      std::vector<Vertex> sep;
      std::set_intersection(td->bags[c].begin(), td->bags[c].end(), td->bags[p].begin(),
                            td->bags[p].end(), std::back_inserter(sep));
      if (tail >= 0 && std::includes(td->bags[tail].begin(), td->bags[tail].end(),
                                     sep.begin(), sep.end())) {
        td->parent[c] = tail;
        kids[tail].push_back(c);
      } else {
        keep.push_back(c);
      }
      tail = kids[c].empty() ? c : -1;
    }
    kids[p] = keep;
  }
}

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

const char* ViolationName(Violation v) {
  switch (v) {
    case Violation::kNone: return "none";
    case Violation::kNotATree: return "NotATree";
    case Violation::kBagOutOfRange: return "BagOutOfRange";
    case Violation::kW1: return "W1";
    case Violation::kW2: return "W2";
    case Violation::kW3: return "W3";
  }
  return "?";
}

ValidationReport validate_decomposition(const LabeledGraph& g,
                                        const TreeDecomposition& td) {
  ValidationReport rep;
  const int n = g.order();
  const int m = td.num_nodes();
  auto fail = [&](Violation v, std::string msg) {
    rep.ok = false;
    rep.violation = v;
    rep.message = std::move(msg);
    return rep;
  };
  if (m == 0) {
    if (n == 0) {
      rep.ok = true;
      return rep;
    }
    rep.vertex = 0;
    return fail(Violation::kW1, "no bags; vertex 1 uncovered");
  }
  if (static_cast<int>(td.parent.size()) != m || td.root < 0 ||
      td.root >= m || td.parent[td.root] != -1) {
    return fail(Violation::kNotATree, "root or parent table malformed");
  }
  for (int t = 0; t < m; ++t) {
    if (t != td.root && (td.parent[t] < 0 || td.parent[t] >= m)) {
      return fail(Violation::kNotATree,
                  "node " + std::to_string(t + 1) + " is detached");
    }
  }
  {
    // Every node must reach the root within m steps.
    std::vector<int> state(m, 0);  // 0 unknown, 1 on stack, 2 reaches root
    state[td.root] = 2;
    for (int t = 0; t < m; ++t) {
      std::vector<int> path;
      int x = t;
      while (state[x] == 0) {
        state[x] = 1;
        path.push_back(x);
        x = td.parent[x];
      }
      if (state[x] == 1) {
        return fail(Violation::kNotATree, "parent links form a cycle");
      }
      for (int y : path) state[y] = 2;
    }
  }
  std::vector<std::vector<int>> occ(n);
  for (int t = 0; t < m; ++t) {
    const auto& bag = td.bags[t];
    for (size_t i = 0; i < bag.size(); ++i) {
      if (bag[i] < 0 || bag[i] >= n || (i > 0 && bag[i] <= bag[i - 1])) {
        return fail(Violation::kBagOutOfRange,
                    "bag " + std::to_string(t + 1) +
                        " is unsorted or names a missing vertex");
      }
      occ[bag[i]].push_back(t);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (occ[v].empty()) {
      rep.vertex = v;
      return fail(Violation::kW1,
                  "vertex " + std::to_string(v + 1) + " is in no bag");
    }
  }
  for (const Edge& e : g.edges()) {
    bool covered = false;
    for (int t : occ[e.u]) {
      if (BagContains(td.bags[t], e.v)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      rep.edge_u = e.u;
      rep.edge_v = e.v;
      return fail(Violation::kW2, "edge " + std::to_string(e.u + 1) + "-" +
                                      std::to_string(e.v + 1) +
                                      " is in no bag");
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    int tops = 0;
    for (int t : occ[v]) {
      const int p = td.parent[t];
      if (p < 0 || !BagContains(td.bags[p], v)) ++tops;
    }
    if (tops != 1) {
      rep.vertex = v;
      return fail(Violation::kW3, "bags holding vertex " +
                                      std::to_string(v + 1) +
                                      " are not connected");
    }
  }
  rep.ok = true;
  rep.width = td.width();
  return rep;
}

std::vector<Vertex> min_fill_order(const LabeledGraph& g) {
  const int n = g.order();
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  }
  auto fill_of = [&](Vertex v) {
    long fill = 0;
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
      for (auto b = std::next(a); b != adj[v].end(); ++b) {
        if (!adj[*a].count(*b)) ++fill;
      }
    }
    return fill;
  };
  std::vector<long> fill(n);
  std::vector<bool> done(n, false);
  for (Vertex v = 0; v < n; ++v) fill[v] = fill_of(v);
  std::vector<Vertex> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!done[v] && (best < 0 || fill[v] < fill[best])) best = v;
    }
    order.push_back(best);
    done[best] = true;
    std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
    for (size_t i = 0; i < nb.size(); ++i) {
      adj[nb[i]].erase(best);
      for (size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    }
    std::set<Vertex> touched(nb.begin(), nb.end());
    for (Vertex u : nb) touched.insert(adj[u].begin(), adj[u].end());
    for (Vertex u : touched) fill[u] = fill_of(u);
  }
  return order;
}

TreeDecomposition heuristic_decomposition(const LabeledGraph& g) {
  return decomposition_from_order(g, min_fill_order(g), true);
}

TreeDecomposition decomposition_from_order(const LabeledGraph& g,
                                           const std::vector<Vertex>& order,
                                           bool chain_siblings) {
  const int n = g.order();
  TreeDecomposition td;
  if (n == 0) return td;
  {
    std::vector<bool> seen(n, false);
    bool ok = static_cast<int>(order.size()) == n;
    for (Vertex v : order) {
      if (!ok || v < 0 || v >= n || seen[v]) {
        ok = false;
        break;
      }
      seen[v] = true;
    }
    if (!ok) throw LcsError(ErrorCode::kInvalidInput, "order is not a permutation");
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  }
  std::vector<std::vector<Vertex>> bags(n);
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = order[i];
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    bags[i] = nb;
    bags[i].push_back(v);
    std::sort(bags[i].begin(), bags[i].end());
    int first = n;
    for (Vertex u : nb) first = std::min(first, pos[u]);
    if (first < n) parent[i] = first;
    for (size_t a = 0; a < nb.size(); ++a) {
      adj[nb[a]].erase(v);
      for (size_t b = a + 1; b < nb.size(); ++b) {
        adj[nb[a]].insert(nb[b]);
        adj[nb[b]].insert(nb[a]);
      }
    }
  }
  // Contract a node into its parent when its bag is a subset.
  std::vector<int> alias(n);
  for (int i = 0; i < n; ++i) alias[i] = i;
  auto resolve = [&](int x) {
    while (alias[x] != x) x = alias[x];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    if (parent[i] < 0) continue;
    const int p = resolve(parent[i]);
    if (std::includes(bags[p].begin(), bags[p].end(), bags[i].begin(),
                      bags[i].end())) {
      alias[i] = p;
    }
  }
  std::vector<int> index(n, -1);
  for (int i = 0; i < n; ++i) {
    if (alias[i] == i) {
      index[i] = td.num_nodes();
      td.bags.push_back(bags[i]);
    }
  }
  td.parent.assign(td.num_nodes(), -1);
  td.root = index[n - 1];
  for (int i = 0; i < n; ++i) {
    if (alias[i] != i) continue;
    if (parent[i] >= 0) {
      td.parent[index[i]] = index[resolve(parent[i])];
    } else if (index[i] != td.root) {
      td.parent[index[i]] = td.root;
    }
  }
  if (chain_siblings) ChainSiblings(&td);
  return td;
}

namespace {

constexpr int kExactLayout = 16;

std::vector<Vertex> ExactLayout(const LabeledGraph& g) {
  const int n = g.order();
  const uint32_t full = (1u << n) - 1;
  std::vector<uint32_t> nb(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) nb[v] |= 1u << u;
  }
  // boundary[S]: vertices of S with a neighbor outside S
  std::vector<uint8_t> boundary(full + 1, 0);
  for (uint32_t s = 1; s <= full; ++s) {
    int c = 0;
    for (Vertex v = 0; v < n; ++v) {
      if ((s >> v & 1) && (nb[v] & ~s)) ++c;
    }
    boundary[s] = static_cast<uint8_t>(c);
  }
  std::vector<uint8_t> best(full + 1, 255);
  std::vector<int8_t> last(full + 1, -1);
  best[0] = 0;
  for (uint32_t s = 0; s < full; ++s) {
    if (best[s] == 255) continue;
    for (Vertex v = 0; v < n; ++v) {
      if (s >> v & 1) continue;
      const uint32_t t = s | 1u << v;
      // bag of v = boundary of s plus v itself
      const uint8_t c = std::max<uint8_t>(best[s], boundary[s] + 1);
      if (c < best[t]) {
        best[t] = c;
        last[t] = static_cast<int8_t>(v);
      }
    }
  }
  std::vector<Vertex> order;
  for (uint32_t s = full; s != 0; s &= ~(1u << last[s])) order.push_back(last[s]);
  std::reverse(order.begin(), order.end());
  return order;
}

// Adds the vertex that grows the boundary least, preferring the frontier.
std::vector<Vertex> GreedyLayout(const LabeledGraph& g) {
  const int n = g.order();
  std::vector<int> open(n);  // unplaced neighbors
  std::vector<bool> placed(n, false), frontier(n, false);
  for (Vertex v = 0; v < n; ++v) open[v] = g.degree(v);
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<Vertex> front;
  while (static_cast<int>(order.size()) < n) {
    Vertex best = -1;
    int best_delta = 0;
    auto consider = [&](Vertex v) {
      int delta = open[v] > 0 ? 1 : 0;
      for (Vertex u : g.neighbors(v)) {
        if (placed[u] && open[u] == 1) --delta;
      }
      if (best < 0 || delta < best_delta ||
          (delta == best_delta && g.degree(v) < g.degree(best)) ||
          (delta == best_delta && g.degree(v) == g.degree(best) && v < best)) {
        best = v;
        best_delta = delta;
      }
    };
    front.erase(std::remove_if(front.begin(), front.end(), [&](Vertex v) { return placed[v]; }),
                front.end());
    if (front.empty()) {
      for (Vertex v = 0; v < n; ++v) {
        if (!placed[v]) consider(v);
      }
    } else {
      for (Vertex v : front) consider(v);
    }
    placed[best] = true;
    order.push_back(best);
    for (Vertex u : g.neighbors(best)) {
      --open[u];
      if (!placed[u] && !frontier[u]) {
        frontier[u] = true;
        front.push_back(u);
      }
    }
  }
  return order;
}

}  // namespace

std::vector<Vertex> linear_layout(const LabeledGraph& g) {
  return g.order() <= kExactLayout ? ExactLayout(g) : GreedyLayout(g);
}

TreeDecomposition decomposition_from_layout(const LabeledGraph& g,
                                            const std::vector<Vertex>& layout) {
  const int n = g.order();
  if (static_cast<int>(layout.size()) != n) {
    throw LcsError(ErrorCode::kInvalidInput, "layout must list every vertex once");
  }
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = layout[i];
    if (v < 0 || v >= n || pos[v] >= 0) {
      throw LcsError(ErrorCode::kInvalidInput, "layout must list every vertex once");
    }
    pos[v] = i;
  }
  // reach[v]: last position among v and its neighbors
  std::vector<int> reach(n);
  for (Vertex v = 0; v < n; ++v) {
    reach[v] = pos[v];
    for (Vertex u : g.neighbors(v)) reach[v] = std::max(reach[v], pos[u]);
  }
  TreeDecomposition td;
  std::vector<Vertex> live;
  for (int i = 0; i < n; ++i) {
    live.erase(std::remove_if(live.begin(), live.end(), [&](Vertex v) { return reach[v] < i; }),
               live.end());
    live.push_back(layout[i]);
    std::vector<Vertex> bag = live;
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    td.parent.push_back(i - 1);
  }
  if (n > 0) td.root = 0;
  return td;
}

TreeDecomposition linear_decomposition(const LabeledGraph& g) {
  return decomposition_from_layout(g, linear_layout(g));
}

TreeDecomposition path_decomposition(int n) {
  TreeDecomposition td;
  if (n <= 0) return td;
  if (n == 1) return single_bag_decomposition(1);
  for (int i = 0; i + 1 < n; ++i) {
    td.bags.push_back({i, i + 1});
    td.parent.push_back(i - 1);
  }
  td.root = 0;
  return td;
}

TreeDecomposition single_bag_decomposition(int n) {
  TreeDecomposition td;
  if (n <= 0) return td;
  td.bags.emplace_back();
  for (int v = 0; v < n; ++v) td.bags[0].push_back(v);
  td.parent.push_back(-1);
  td.root = 0;
  return td;
}

const char* NodeKindName(NodeKind k) {
  switch (k) {
    case NodeKind::kLeaf: return "leaf";
    case NodeKind::kIntroduce: return "introduce";
    case NodeKind::kForget: return "forget";
    case NodeKind::kJoin: return "join";
  }
  return "?";
}

int EasyTreeDecomposition::width() const {
  int w = -1;
  for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
  return w;
}

TreeDecomposition EasyTreeDecomposition::as_tree_decomposition() const {
  TreeDecomposition td;
  for (const auto& nd : nodes) {
    td.bags.push_back(nd.bag);
    td.parent.push_back(nd.parent);
  }
  td.root = root;
  return td;
}

namespace {

class EasyBuilder {
 public:
  explicit EasyBuilder(EasyTreeDecomposition* out) : out_(out) {}

  int Add(NodeKind kind, std::vector<Vertex> bag, Vertex v, int c0, int c1) {
    EasyNode nd;
    nd.kind = kind;
    nd.bag = std::move(bag);
    nd.vertex = v;
    nd.children[0] = c0;
    nd.children[1] = c1;
    const int id = out_->num_nodes();
    out_->nodes.push_back(std::move(nd));
    if (c0 >= 0) out_->nodes[c0].parent = id;
    if (c1 >= 0) out_->nodes[c1].parent = id;
    return id;
  }

  // Extends node `top` (bag `from`) upwards until its bag equals `to`.
  int Chain(int top, const std::vector<Vertex>& to) {
    std::vector<Vertex> bag = out_->nodes[top].bag;
    const std::vector<Vertex> from = bag;
    for (Vertex v : from) {
      if (BagContains(to, v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      top = Add(NodeKind::kForget, bag, v, top, -1);
    }
    for (Vertex v : to) {
      if (BagContains(from, v)) continue;
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      top = Add(NodeKind::kIntroduce, bag, v, top, -1);
    }
    return top;
  }

  int Leaf(const std::vector<Vertex>& bag) {
    const int leaf = Add(NodeKind::kLeaf, {bag.front()}, bag.front(), -1, -1);
    return Chain(leaf, bag);
  }

 private:
  EasyTreeDecomposition* out_;
};

}  // namespace

EasyTreeDecomposition to_easy(const LabeledGraph& g,
                              const TreeDecomposition& td) {
  const ValidationReport rep = validate_decomposition(g, td);
  if (!rep.ok) {
    throw LcsError(ErrorCode::kInvalidInput,
                   std::string("decomposition invalid (") +
                       ViolationName(rep.violation) + "): " + rep.message);
  }
  EasyTreeDecomposition etd;
  if (td.num_nodes() == 0) return etd;
  const int m = td.num_nodes();
  std::vector<std::vector<int>> nbrs(m);
  for (int t = 0; t < m; ++t) {
    if (td.parent[t] >= 0) {
      nbrs[t].push_back(td.parent[t]);
      nbrs[td.parent[t]].push_back(t);
    }
  }
  // Re-root at a tree leaf with a nonempty bag: an inner root would add a
  // join. Fall back to any nonempty bag.
  int root = -1;
  for (int t = 0; t < m && root < 0; ++t) {
    if (!td.bags[t].empty() && nbrs[t].size() <= 1) root = t;
  }
  for (int t = 0; t < m && root < 0; ++t) {
    if (!td.bags[t].empty()) root = t;
  }
  if (root < 0) return etd;
  std::vector<int> parent(m, -2);
  parent[root] = -1;
  std::vector<int> order{root};
  for (size_t i = 0; i < order.size(); ++i) {
    const int t = order[i];
    std::sort(nbrs[t].begin(), nbrs[t].end());
    for (int u : nbrs[t]) {
      if (parent[u] == -2) {
        parent[u] = t;
        order.push_back(u);
      }
    }
  }
  const auto children = ChildLists(parent);
  EasyBuilder b(&etd);
  std::vector<int> top(m, -1);  // easy node whose bag equals td bag, or -1
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    const auto& bag = td.bags[t];
    std::vector<int> subs;
    for (int c : children[t]) {
      if (top[c] >= 0) subs.push_back(b.Chain(top[c], bag));
    }
    if (subs.empty()) {
      top[t] = bag.empty() ? -1 : b.Leaf(bag);
      continue;
    }
    int acc = subs[0];
    for (size_t i = 1; i < subs.size(); ++i) {
      acc = b.Add(NodeKind::kJoin, bag, -1, acc, subs[i]);
    }
    top[t] = acc;
  }
  const auto& rbag = td.bags[root];
  etd.root = b.Chain(top[root], {rbag.front()});
  etd.nodes[etd.root].parent = -1;
  return etd;
}

std::string check_easy(const EasyTreeDecomposition& etd) {
  auto bad = [](int t, const std::string& why) {
    return "node " + std::to_string(t) + ": " + why;
  };
  if (etd.num_nodes() == 0) return "";
  if (etd.nodes[etd.root].bag.size() != 1) return bad(etd.root, "root not singleton");
  for (int t = 0; t < etd.num_nodes(); ++t) {
    const EasyNode& nd = etd.nodes[t];
    for (int i = 0; i < nd.num_children(); ++i) {
      if (etd.nodes[nd.children[i]].parent != t) return bad(t, "parent link");
    }
    switch (nd.kind) {
      case NodeKind::kLeaf:
        if (nd.num_children() != 0 || nd.bag.size() != 1 ||
            nd.bag[0] != nd.vertex) {
          return bad(t, "leaf must be a singleton without children");
        }
        break;
      case NodeKind::kIntroduce:
      case NodeKind::kForget: {
        if (nd.num_children() != 1 || nd.children[0] < 0) {
          return bad(t, "needs exactly one child");
        }
        std::vector<Vertex> child = etd.nodes[nd.children[0]].bag;
        std::vector<Vertex> expect = child;
        if (nd.kind == NodeKind::kIntroduce) {
          if (BagContains(child, nd.vertex)) return bad(t, "vertex already present");
          expect.insert(std::lower_bound(expect.begin(), expect.end(), nd.vertex),
                        nd.vertex);
        } else {
          if (!BagContains(child, nd.vertex)) return bad(t, "vertex not in child");
          expect.erase(std::find(expect.begin(), expect.end(), nd.vertex));
        }
        if (expect != nd.bag) return bad(t, "bag equation fails");
        break;
      }
      case NodeKind::kJoin:
        if (nd.num_children() != 2) return bad(t, "join needs two children");
        if (etd.nodes[nd.children[0]].bag != nd.bag ||
            etd.nodes[nd.children[1]].bag != nd.bag) {
          return bad(t, "join children bags differ");
        }
        break;
    }
  }
  return "";
}

TreeDecomposition lift_power(const LabeledGraph& g, const TreeDecomposition& td,
                             int p) {
  if (p < 1) throw LcsError(ErrorCode::kInvalidParameter, "power must be >= 1");
  const ValidationReport rep = validate_decomposition(g, td);
  if (!rep.ok) throw LcsError(ErrorCode::kInvalidInput, rep.message);
  const int radius = (p + 1) / 2;
  std::vector<std::vector<Vertex>> balls(g.order());
  for (Vertex v = 0; v < g.order(); ++v) balls[v] = closed_ball(g, v, radius);
  TreeDecomposition out = td;
  for (auto& bag : out.bags) {
    std::set<Vertex> y;
    for (Vertex v : bag) y.insert(balls[v].begin(), balls[v].end());
    bag.assign(y.begin(), y.end());
  }
  return out;
}

TreeDecomposition lift_edge_transform(const LabeledGraph& g,
                                      const TreeDecomposition& td,
                                      EdgeTransformKind kind) {
  const ValidationReport rep = validate_decomposition(g, td);
  if (!rep.ok) throw LcsError(ErrorCode::kInvalidInput, rep.message);
  const int n = g.order();
  TreeDecomposition out = td;
  for (int i = 0; i < g.size(); ++i) {
    const Edge& e = g.edges()[i];
    int host = -1;
    for (int t = 0; t < td.num_nodes(); ++t) {
      if (BagContains(td.bags[t], e.u) && BagContains(td.bags[t], e.v)) {
        host = t;
        break;
      }
    }
    std::vector<Vertex> bag;
    if (kind == EdgeTransformKind::kJagged) {
      bag = td.bags[host];
    } else {
      bag = {std::min(e.u, e.v), std::max(e.u, e.v)};
    }
    bag.push_back(n + i);
    out.bags.push_back(bag);
    out.parent.push_back(host);
  }
  out.declared_vertices = -1;
  return out;
}

TreeDecomposition read_td(std::istream& in) {
  std::string line;
  int lineno = 0;
  int nbags = -1;
  int nverts = -1;
  TreeDecomposition td;
  std::vector<bool> seen;
  std::vector<std::pair<int, int>> tree_edges;
  auto fail = [&](const std::string& msg) {
    throw LcsError(ErrorCode::kParseError,
                   "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok == "c") continue;
    if (tok == "s") {
      std::string kind;
      int wp1 = 0;
      if (!(ss >> kind >> nbags >> wp1 >> nverts) || kind != "td" ||
          nbags < 0 || nverts < 0) {
        fail("malformed header, expected 's td <bags> <width+1> <n>'");
      }
      td.bags.assign(nbags, {});
      seen.assign(nbags, false);
      continue;
    }
    if (nbags < 0) fail("content before header");
    if (tok == "b") {
      int id = 0;
      if (!(ss >> id) || id < 1 || id > nbags) fail("bad bag id");
      if (seen[id - 1]) fail("duplicate bag " + std::to_string(id));
      seen[id - 1] = true;
      int v = 0;
      while (ss >> v) {
        if (v < 1 || v > nverts) fail("vertex out of range");
        td.bags[id - 1].push_back(v - 1);
      }
      if (!ss.eof()) fail("bad vertex token");
      std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
      td.bags[id - 1].erase(
          std::unique(td.bags[id - 1].begin(), td.bags[id - 1].end()),
          td.bags[id - 1].end());
      continue;
    }
    int a = 0;
    int c = 0;
    try {
      a = std::stoi(tok);
    } catch (const std::exception&) {
      fail("unexpected token '" + tok + "'");
    }
    if (!(ss >> c) || a < 1 || a > nbags || c < 1 || c > nbags) {
      fail("bad tree edge");
    }
    tree_edges.push_back({a - 1, c - 1});
  }
  if (nbags < 0) fail("missing header");
  td.declared_vertices = nverts;
  td.parent.assign(nbags, -1);
  if (nbags == 0) return td;
  std::vector<std::vector<int>> nbrs(nbags);
  for (auto [a, c] : tree_edges) {
    nbrs[a].push_back(c);
    nbrs[c].push_back(a);
  }
  td.root = 0;
  std::vector<bool> vis(nbags, false);
  vis[0] = true;
  std::vector<int> queue{0};
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int u : nbrs[queue[i]]) {
      if (!vis[u]) {
        vis[u] = true;
        td.parent[u] = queue[i];
        queue.push_back(u);
      }
    }
  }
  if (tree_edges.size() != static_cast<size_t>(nbags - 1)) {
    // A forest or a graph with cycles: leave it to validation.
    for (int t = 0; t < nbags; ++t) {
      if (!vis[t]) td.parent[t] = -1;
    }
    if (static_cast<int>(queue.size()) == nbags) td.parent[0] = -3;
  }
  return td;
}

TreeDecomposition read_td_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LcsError(ErrorCode::kInvalidInput, "cannot open " + path);
  return read_td(in);
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.num_nodes() << " " << td.width() + 1 << " " << n << "\n";
  for (int t = 0; t < td.num_nodes(); ++t) {
    out << "b " << t + 1;
    for (Vertex v : td.bags[t]) out << " " << v + 1;
    out << "\n";
  }
  for (int t = 0; t < td.num_nodes(); ++t) {
    if (td.parent[t] >= 0) out << td.parent[t] + 1 << " " << t + 1 << "\n";
  }
}

}  // namespace lcs
