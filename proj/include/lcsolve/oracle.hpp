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

#ifndef LCSOLVE_ORACLE_HPP_
#define LCSOLVE_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "lcsolve/globals.hpp"
#include "lcsolve/graph.hpp"
#include "lcsolve/problem.hpp"

namespace lcs {

struct OracleOptions {
  uint64_t budget = 10'000'000;  // colorings enumerated at most
  bool collect = false;          // keep co-optimal colorings
  size_t max_collect = 256;
};

struct OracleResult {
  Weight optimum = Weight::Error();
  std::vector<std::vector<Color>> optimal;  // only with collect
  uint64_t enumerated = 0;
};

// Exhaustive search over all list colorings. Checks run on true r-balls.
OracleResult brute_force_solve(const ProblemInstance& inst,
                               const std::vector<GlobalConstraint>& constraints = {},
                               const OracleOptions& options = {});

// Direct test of the global constraints on a full coloring.
bool satisfies_constraints(const ProblemInstance& inst, const std::vector<Color>& c,
                           const std::vector<GlobalConstraint>& constraints);

// Longest legal dominating sequence by enumeration. Error when no total
// dominating sequence exists.
Weight brute_force_grundy(const LabeledGraph& g, bool total);

// Optimum of a catalog problem computed straight from its combinatorial
// definition on the input graph, without the coloring encoding.
Weight native_optimum(const std::string& name, const nlohmann::json& params,
                      const LabeledGraph& g, uint64_t budget = 10'000'000);

}  // namespace lcs

#endif  // LCSOLVE_ORACLE_HPP_
