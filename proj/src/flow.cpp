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

#include "lcsolve/flow.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <queue>

#include "lcsolve/error.hpp"

namespace lcs {

FlowNetwork::FlowNetwork(int nodes, int source, int sink)
    : nodes_(nodes), source_(source), sink_(sink) {
  if (source < 0 || sink < 0 || source >= nodes || sink >= nodes || source == sink) {
    throw LcsError(ErrorCode::kInvalidInput, "bad source or sink");
  }
}

int FlowNetwork::add_arc(int from, int to, int64_t capacity, int64_t cost) {
  if (from < 0 || to < 0 || from >= nodes_ || to >= nodes_) {
    throw LcsError(ErrorCode::kInvalidInput, "arc endpoint out of range");
  }
  if (to == source_ || from == sink_) {
    throw LcsError(ErrorCode::kInvalidInput, "arc into source or out of sink");
  }
  if (capacity < 0) throw LcsError(ErrorCode::kInvalidInput, "negative capacity");
  arcs_.push_back({from, to, capacity, cost, 0});
  return static_cast<int>(arcs_.size()) - 1;
}

FlowResult min_cost_max_flow(FlowNetwork& net) {
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  const int n = net.num_nodes();
  // residual arcs 2a (forward) and 2a+1 (backward)
  struct Res {
    int to;
    int64_t cap;
    int64_t cost;
  };
  std::vector<Res> res;
  std::vector<std::vector<int>> out(n);
  for (const FlowArc& a : net.arcs()) {
    out[a.from].push_back(static_cast<int>(res.size()));
    res.push_back({a.to, a.capacity, a.cost});
    out[a.to].push_back(static_cast<int>(res.size()));
    res.push_back({a.from, 0, -a.cost});
  }

  // Bellman-Ford for the initial potentials, so negative arc costs are fine.
  std::vector<int64_t> pot(n, kInf);
  pot[net.source()] = 0;
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      if (pot[v] == kInf) continue;
      for (int id : out[v]) {
        if (res[id].cap > 0 && pot[v] + res[id].cost < pot[res[id].to]) {
          pot[res[id].to] = pot[v] + res[id].cost;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  for (int64_t& p : pot) {
    if (p == kInf) p = 0;
  }

  FlowResult result;
  std::vector<int64_t> dist(n);
  std::vector<int> via(n);
  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    using Item = std::pair<int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[net.source()] = 0;
    pq.push({0, net.source()});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (int id : out[v]) {
        const Res& r = res[id];
        if (r.cap == 0) continue;
        const int64_t nd = d + r.cost + pot[v] - pot[r.to];
        if (nd < dist[r.to]) {
          dist[r.to] = nd;
          via[r.to] = id;
          pq.push({nd, r.to});
        }
      }
    }
    if (dist[net.sink()] == kInf) break;
    for (int v = 0; v < n; ++v) {
      if (dist[v] < kInf) pot[v] += dist[v];
    }
    int64_t push = kInf;
    for (int v = net.sink(); v != net.source(); v = res[via[v] ^ 1].to) {
      push = std::min(push, res[via[v]].cap);
    }
    for (int v = net.sink(); v != net.source(); v = res[via[v] ^ 1].to) {
      res[via[v]].cap -= push;
      res[via[v] ^ 1].cap += push;
      result.cost += push * res[via[v]].cost;
    }
    result.flow += push;
  }
  auto& arcs = net.arcs();
  for (size_t a = 0; a < arcs.size(); ++a) arcs[a].flow = res[2 * a + 1].cap;
  return result;
}

DistributionCheck distribution_check_from(const ProblemInstance& inst) {
  const ProblemInstance* p = &inst;
  return [p](Vertex v, Color i, const std::vector<int>& counts) {
    LocalColoring lc;
    lc.center = v;
    lc.center_color = i;
    std::vector<int> left = counts;
    if (left[i] == 0) return false;
    --left[i];
    Color c = 0;
    for (Vertex u = 0; u < p->graph.order(); ++u) {
      if (u == v) continue;
      while (c < static_cast<Color>(left.size()) && left[c] == 0) ++c;
      if (c == static_cast<Color>(left.size())) return false;
      lc.members.push_back(u);
      lc.colors.push_back(c);
      --left[c];
    }
    return p->check(lc);
  };
}

namespace {

struct Attempt {
  Weight cost = Weight::Error();
  std::vector<Color> assignment;
};

Attempt TryDistribution(const ProblemInstance& inst, const DistributionCheck& check,
                        const std::vector<int>& counts) {
  const int n = inst.graph.order();
  const int colors = static_cast<int>(counts.size());
  // source, colors, (v, list position), vertices, sink
  std::vector<int> pair_base(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) {
    pair_base[v + 1] = pair_base[v] + static_cast<int>(inst.lists[v].size());
  }
  const int src = 0, first_color = 1, first_pair = 1 + colors;
  const int first_vertex = first_pair + pair_base[n];
  const int sink = first_vertex + n;
  FlowNetwork net(sink + 1, src, sink);
  for (Color i = 0; i < colors; ++i) {
    if (counts[i] > 0) net.add_arc(src, first_color + i, counts[i], 0);
  }
  std::vector<std::pair<int, Color>> choice;  // arc id -> (v, color)
  std::vector<int> choice_arc;
  for (Vertex v = 0; v < n; ++v) {
    for (size_t x = 0; x < inst.lists[v].size(); ++x) {
      const Color i = inst.lists[v][x];
      if (counts[i] == 0 || !check(v, i, counts)) continue;
      const int node = first_pair + pair_base[v] + static_cast<int>(x);
      net.add_arc(first_color + i, node, 1, 0);
      choice_arc.push_back(net.add_arc(node, first_vertex + v, 1, inst.costs[v][x].value));
      choice.push_back({v, i});
    }
    net.add_arc(first_vertex + v, sink, 1, 0);
  }
  const FlowResult fr = min_cost_max_flow(net);
  Attempt a;
  if (fr.flow != n) return a;
  a.cost = Weight::Of(fr.cost);
  a.assignment.assign(n, -1);
  for (size_t k = 0; k < choice.size(); ++k) {
    if (net.arcs()[choice_arc[k]].flow == 1) a.assignment[choice[k].first] = choice[k].second;
  }
  return a;
}

void Distributions(int n, int colors, std::vector<int>& cur, int pos,
                   std::vector<std::vector<int>>* out) {
  if (pos == colors - 1) {
    cur[pos] = n;
    out->push_back(cur);
    return;
  }
  for (int k = n; k >= 0; --k) {
    cur[pos] = k;
    Distributions(n - k, colors, cur, pos + 1, out);
  }
}

}  // namespace

CompleteFlowResult solve_complete_graph(const ProblemInstance& inst,
                                        const DistributionCheck& check,
                                        const CompleteFlowOptions& options) {
  validate_instance(inst);
  const LabeledGraph& g = inst.graph;
  if (!is_complete(g)) {
    throw LcsError(ErrorCode::kNotComplete, "the flow engine needs a complete graph");
  }
  for (const Edge& e : g.edges()) {
    if (e.label != LabeledGraph::kDefaultLabel) {
      throw LcsError(ErrorCode::kInvalidInput, "the flow engine needs unit edge labels");
    }
  }
  if (inst.algebra.kind() != AlgebraKind::kMinPlus) {
    throw LcsError(ErrorCode::kInvalidInput, "the flow engine supports min-plus weights only");
  }
  const int colors = inst.num_colors();
  if (colors > options.max_colors) {
    throw LcsError(ErrorCode::kTooManyColors,
                   std::to_string(colors) + " colors, limit " +
                       std::to_string(options.max_colors));
  }
  CompleteFlowResult result;
  if (colors == 0) {
    if (g.order() == 0) result.optimum = Weight::Of(0);
    return result;
  }
  std::vector<std::vector<int>> dists;
  std::vector<int> cur(colors, 0);
  Distributions(g.order(), colors, cur, 0, &dists);
  result.distributions = dists.size();

  std::vector<Attempt> attempts(dists.size());
  const int threads = std::max(1, options.threads);
  auto run = [&](size_t from, size_t step) {
    for (size_t d = from; d < dists.size(); d += step) {
      attempts[d] = TryDistribution(inst, check, dists[d]);
    }
  };
  if (threads == 1) {
    run(0, 1);
  } else {
    std::vector<std::future<void>> fs;
    for (int t = 0; t < threads; ++t) {
      fs.push_back(std::async(std::launch::async, run, static_cast<size_t>(t),
                              static_cast<size_t>(threads)));
    }
    for (auto& f : fs) f.get();
  }
  // first minimum in enumeration order
  for (Attempt& a : attempts) {
    if (a.cost.error) continue;
    if (result.optimum.error || inst.algebra.strictly_better(a.cost, result.optimum)) {
      result.optimum = a.cost;
      result.assignment = std::move(a.assignment);
    }
  }
  return result;
}

}  // namespace lcs
