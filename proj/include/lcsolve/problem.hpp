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

#ifndef LCSOLVE_PROBLEM_HPP_
#define LCSOLVE_PROBLEM_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcsolve/graph.hpp"
#include "lcsolve/weights.hpp"

namespace lcs {

// Index into ProblemInstance::color_names.
using Color = int;

// A coloring of N^r[center]. members excludes the center and is sorted.
struct LocalColoring {
  Vertex center = -1;
  Color center_color = -1;
  std::vector<Vertex> members;
  std::vector<Color> colors;

  // Color of a member or of the center; -1 if absent.
  Color color_of(Vertex u) const;
};

using CheckFn = std::function<bool(const LocalColoring&)>;

struct ProblemInstance {
  LabeledGraph graph;
  int radius = 1;
  WeightAlgebra algebra;
  std::vector<std::string> color_names;
  std::vector<std::vector<Color>> lists;   // L_v in preference order
  std::vector<std::vector<Weight>> costs;  // aligned with lists
  CheckFn check;
  std::string problem_id;
  nlohmann::json params = nlohmann::json::object();

  int num_colors() const { return static_cast<int>(color_names.size()); }
  // Position of color c in L_v, or -1.
  int list_index(Vertex v, Color c) const;
  Weight cost(Vertex v, Color c) const;
  Color color_by_name(const std::string& name) const;
};

// Throws InvalidInput when lists or costs are malformed.
void validate_instance(const ProblemInstance& inst);

// Builds the local view of c around v with the instance radius.
LocalColoring local_view(const ProblemInstance& inst,
                         const std::vector<Color>& c, Vertex v);

bool is_proper(const ProblemInstance& inst, const std::vector<Color>& c);
Weight coloring_weight(const ProblemInstance& inst, const std::vector<Color>& c);

// Same lists, costs and check on G^r with radius 1.
ProblemInstance power_reduction(const ProblemInstance& inst);

// Shared by the catalog and the DSL: every vertex gets the same list.
void set_uniform_lists(ProblemInstance* inst, const std::vector<Color>& list,
                       const std::function<Weight(Color)>& cost);

// Serialization of everything except the check function.
nlohmann::json instance_to_json(const ProblemInstance& inst);

}  // namespace lcs

#endif  // LCSOLVE_PROBLEM_HPP_
