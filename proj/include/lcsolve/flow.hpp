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

#ifndef LCSOLVE_FLOW_HPP_
#define LCSOLVE_FLOW_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lcsolve/problem.hpp"

namespace lcs {

struct FlowArc {
  int from = 0;
  int to = 0;
  int64_t capacity = 0;
  int64_t cost = 0;
  int64_t flow = 0;
};

class FlowNetwork {
 public:
  FlowNetwork(int nodes, int source, int sink);

  // Returns the arc id. Arcs into the source or out of the sink are rejected.
  int add_arc(int from, int to, int64_t capacity, int64_t cost);

  int num_nodes() const { return nodes_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<FlowArc>& arcs() const { return arcs_; }
  std::vector<FlowArc>& arcs() { return arcs_; }

 private:
  int nodes_;
  int source_;
  int sink_;
  std::vector<FlowArc> arcs_;
};

struct FlowResult {
  int64_t flow = 0;
  int64_t cost = 0;
};

// Successive shortest paths with potentials. Per-arc flows are written back.
FlowResult min_cost_max_flow(FlowNetwork& net);

// check'(v, i, counts): whether v may take color i when color j is used
// counts[j] times overall.
using DistributionCheck =
    std::function<bool(Vertex, Color, const std::vector<int>& counts)>;

struct CompleteFlowOptions {
  int max_colors = 10;
  int threads = 1;
};

struct CompleteFlowResult {
  Weight optimum = Weight::Error();
  uint64_t distributions = 0;
  std::optional<std::vector<Color>> assignment;
};

CompleteFlowResult solve_complete_graph(const ProblemInstance& inst,
                                        const DistributionCheck& check,
                                        const CompleteFlowOptions& options = {});

// check' read off the instance check: on a complete graph the check sees the
// other vertices' colors as a multiset, so one representative suffices.
DistributionCheck distribution_check_from(const ProblemInstance& inst);

}  // namespace lcs

#endif  // LCSOLVE_FLOW_HPP_
