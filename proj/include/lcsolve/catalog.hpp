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

#ifndef LCSOLVE_CATALOG_HPP_
#define LCSOLVE_CATALOG_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcsolve/engine.hpp"
#include "lcsolve/globals.hpp"
#include "lcsolve/pns.hpp"
#include "lcsolve/problem.hpp"
#include "lcsolve/treedec.hpp"

namespace lcs {

enum class GraphTransform { kNone, kSubdivision, kJagged };

// Everything needed to solve one named problem on one input graph.
struct ProblemBundle {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  LabeledGraph input;  // the graph the user supplied
  // The problem as stated, on the (possibly transformed) graph. May have
  // radius > 1; the oracle evaluates it on true balls.
  std::shared_ptr<const ProblemInstance> instance;
  // Radius-1 version handed to the engine (power reduction when needed).
  std::shared_ptr<const ProblemInstance> reduced;
  std::shared_ptr<const PartialNeighborhoodSystem> pns;
  std::vector<GlobalConstraint> constraints;
  GraphTransform transform = GraphTransform::kNone;
  VertexMap origin;  // filled when transform != kNone
  std::function<Weight(Weight)> post_map;  // empty means identity

  Weight MapBack(Weight w) const { return post_map ? post_map(w) : w; }
  // Decomposition of reduced->graph built from one of the input graph.
  TreeDecomposition LiftDecomposition(const TreeDecomposition& td) const;
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  nlohmann::json example_params;  // a small parameter set used by tests and docs
};

const std::vector<CatalogEntry>& catalog_entries();

// Errors: UnknownProblem, MissingParameter, InvalidParameter, EdgeNotInGraph,
// IsolatedVertex. params may carry "costs": one array per vertex aligned with
// L_v, and "constraints" in the globals JSON format.
ProblemBundle instantiate(const std::string& name, const nlohmann::json& params,
                          const LabeledGraph& g);

// Lifts td when given, otherwise takes choose_decomposition; runs the engine
// and maps the optimum back.
SolveResult solve_problem(const ProblemBundle& b,
                          const std::optional<TreeDecomposition>& td,
                          const SolveOptions& options = {});

}  // namespace lcs

#endif  // LCSOLVE_CATALOG_HPP_
