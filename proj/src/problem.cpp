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

#include "lcsolve/problem.hpp"

#include <algorithm>

#include "lcsolve/error.hpp"

namespace lcs {

Color LocalColoring::color_of(Vertex u) const {
  if (u == center) return center_color;
  auto it = std::lower_bound(members.begin(), members.end(), u);
  if (it == members.end() || *it != u) return -1;
  return colors[it - members.begin()];
}

int ProblemInstance::list_index(Vertex v, Color c) const {
  const auto& l = lists[v];
  for (size_t i = 0; i < l.size(); ++i) {
    if (l[i] == c) return static_cast<int>(i);
  }
  return -1;
}

Weight ProblemInstance::cost(Vertex v, Color c) const {
  const int i = list_index(v, c);
  if (i < 0) {
    throw LcsError(ErrorCode::kInvalidColor,
                   "color " + std::to_string(c) + " not in list of vertex " +
                       std::to_string(v));
  }
  return costs[v][i];
}

Color ProblemInstance::color_by_name(const std::string& name) const {
  for (int c = 0; c < num_colors(); ++c) {
    if (color_names[c] == name) return c;
  }
  throw LcsError(ErrorCode::kInvalidColor, "unknown color '" + name + "'");
}

void validate_instance(const ProblemInstance& inst) {
  const int n = inst.graph.order();
  if (static_cast<int>(inst.lists.size()) != n ||
      static_cast<int>(inst.costs.size()) != n) {
    throw LcsError(ErrorCode::kInvalidInput, "lists/costs size mismatch");
  }
  if (inst.radius < 1) {
    throw LcsError(ErrorCode::kInvalidInput, "radius must be positive");
  }
  if (!inst.check) throw LcsError(ErrorCode::kInvalidInput, "missing check");
  for (Vertex v = 0; v < n; ++v) {
    if (inst.lists[v].empty()) {
      throw LcsError(ErrorCode::kInvalidInput,
                     "empty list at vertex " + std::to_string(v));
    }
    if (inst.costs[v].size() != inst.lists[v].size()) {
      throw LcsError(ErrorCode::kInvalidInput,
                     "cost table misaligned at vertex " + std::to_string(v));
    }
    for (size_t i = 0; i < inst.lists[v].size(); ++i) {
      const Color c = inst.lists[v][i];
      if (c < 0 || c >= inst.num_colors()) {
        throw LcsError(ErrorCode::kInvalidColor, "color id out of range");
      }
      if (!inst.algebra.valid_cost(inst.costs[v][i])) {
        throw LcsError(ErrorCode::kInvalidInput,
                       "cost not allowed by " + inst.algebra.name() +
                           " at vertex " + std::to_string(v));
      }
    }
  }
}

LocalColoring local_view(const ProblemInstance& inst,
                         const std::vector<Color>& c, Vertex v) {
  LocalColoring lc;
  lc.center = v;
  lc.center_color = c[v];
  if (inst.radius == 1) {
    for (Vertex u : inst.graph.neighbors(v)) {
      lc.members.push_back(u);
      lc.colors.push_back(c[u]);
    }
    return lc;
  }
  for (Vertex u : closed_ball(inst.graph, v, inst.radius)) {
    if (u == v) continue;
    lc.members.push_back(u);
    lc.colors.push_back(c[u]);
  }
  return lc;
}

namespace {

void RequireValid(const ProblemInstance& inst, const std::vector<Color>& c) {
  if (static_cast<int>(c.size()) != inst.graph.order()) {
    throw LcsError(ErrorCode::kInvalidColor, "coloring has wrong length");
  }
  for (Vertex v = 0; v < inst.graph.order(); ++v) {
    if (inst.list_index(v, c[v]) < 0) {
      throw LcsError(ErrorCode::kInvalidColor,
                     "vertex " + std::to_string(v) + " colored outside L_v");
    }
  }
}

}  // namespace

bool is_proper(const ProblemInstance& inst, const std::vector<Color>& c) {
  RequireValid(inst, c);
  for (Vertex v = 0; v < inst.graph.order(); ++v) {
    if (!inst.check(local_view(inst, c, v))) return false;
  }
  return true;
}

Weight coloring_weight(const ProblemInstance& inst,
                       const std::vector<Color>& c) {
  RequireValid(inst, c);
  Weight w = inst.algebra.neutral();
  for (Vertex v = 0; v < inst.graph.order(); ++v) {
    w = inst.algebra.combine(w, inst.cost(v, c[v]));
  }
  return w;
}

ProblemInstance power_reduction(const ProblemInstance& inst) {
  ProblemInstance out = inst;
  if (inst.radius == 1) return out;
  out.graph = graph_power(inst.graph, inst.radius);
  out.radius = 1;
  return out;
}

void set_uniform_lists(ProblemInstance* inst, const std::vector<Color>& list,
                       const std::function<Weight(Color)>& cost) {
  const int n = inst->graph.order();
  inst->lists.assign(n, list);
  std::vector<Weight> row;
  for (Color c : list) row.push_back(cost(c));
  inst->costs.assign(n, row);
}

nlohmann::json instance_to_json(const ProblemInstance& inst) {
  nlohmann::json j;
  j["algebra"] = inst.algebra.name();
  j["problem"] = inst.problem_id;
  j["params"] = inst.params;
  j["radius"] = inst.radius;
  j["colors"] = inst.color_names;
  nlohmann::json lists = nlohmann::json::array();
  nlohmann::json costs = nlohmann::json::array();
  for (Vertex v = 0; v < inst.graph.order(); ++v) {
    nlohmann::json l = nlohmann::json::array();
    nlohmann::json w = nlohmann::json::array();
    for (size_t i = 0; i < inst.lists[v].size(); ++i) {
      l.push_back(inst.color_names[inst.lists[v][i]]);
      w.push_back(inst.costs[v][i].value);
    }
    lists.push_back(l);
    costs.push_back(w);
  }
  j["lists"] = lists;
  j["costs"] = costs;
  return j;
}

}  // namespace lcs
