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


#ifndef LCSOLVE_TESTS_DSL_CORPUS_HPP_
#define LCSOLVE_TESTS_DSL_CORPUS_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace lcs::testing {

// Catalog problems written in the problem language.
struct DslCase {
  std::string name;
  nlohmann::json params;
  std::string source;
};

inline const std::vector<DslCase>& DslCorpus() {
  static const std::vector<DslCase> cases = {
      {"dominating-set", nlohmann::json::object(),
       "colors: 0..1; algebra: min-plus; cost: c(v);\n"
       "check: sum(u in N[v] | c(u)) >= 1;\n"},
      {"total-domination", nlohmann::json::object(),
       "colors: 0..1; algebra: min-plus; cost: c(v);\n"
       "check: exists(u in N(v) | c(u) = 1);\n"},
      {"k-tuple-domination", {{"k", 2}},
       "colors: 0..1; algebra: min-plus; cost: c(v);\n"
       "check: count(u in N[v] | c(u) = 1) >= 2;\n"},
      {"total-k-tuple-domination", {{"k", 2}},
       "colors: 0..1; algebra: min-plus; cost: c(v);\n"
       "check: sum(u in N(v) | c(u)) >= 2;\n"},
      {"k-domination", {{"k", 2}},
       "colors: 0..1; algebra: min-plus; cost: c(v);\n"
       "check: c(v) = 0 -> count(u in N(v) | c(u) = 1) >= 2;\n"},
      {"{k}-domination", {{"k", 2}},
       "colors: 0..2; algebra: min-plus; cost: c(v);\n"
       "check: sum(u in N[v] | c(u)) >= 2;\n"},
      {"roman-domination", nlohmann::json::object(),
       "colors: 0..2; algebra: min-plus; cost: c(v);\n"
       "check: c(v) = 0 -> count(u in N(v) | c(u) = 2) >= 1;\n"},
      {"double-roman-domination", nlohmann::json::object(),
       "colors: 0..3; algebra: min-plus; cost: c(v);\n"
       "check: (c(v) = 0 -> count(u in N(v) | c(u) = 2) >= 2 or count(u in N(v) | c(u) = 3) >= 1)\n"
       "   and (c(v) = 1 -> count(u in N(v) | c(u) >= 2) >= 1);\n"},
      {"independent-set", nlohmann::json::object(),
       "colors: 0..1; algebra: max-plus; cost: c(v);\n"
       "check: c(v) = 1 -> forall(u in N(v) | c(u) = 0);\n"},
      {"{k}-packing-function", {{"k", 2}},
       "colors: 0..2; algebra: max-plus; cost: c(v);\n"
       "check: sum(u in N[v] | c(u)) <= 2;\n"},
      {"{k}-limited-packing", {{"k", 2}},
       "colors: 0..1; algebra: max-plus; cost: c(v);\n"
       "check: count(u in N[v] | c(u) = 1) <= 2;\n"},
      {"k-coloring", {{"k", 3}},
       "# proper 3-coloring, minimize the largest color\n"
       "colors: 1..3; algebra: min-max; cost: c(v);\n"
       "check: (c(v) = 1 -> count(u in N(v) | c(u) = 1) = 0)\n"
       "   and (c(v) = 2 -> count(u in N(v) | c(u) = 2) = 0)\n"
       "   and (c(v) = 3 -> count(u in N(v) | c(u) = 3) = 0);\n"},
      {"k-chromatic-sum", {{"k", 3}},
       "colors: 1..3; algebra: min-plus; cost: c(v);\n"
       "check: not (c(v) = 1 and exists(u in N(v) | c(u) = 1))\n"
       "   and not (c(v) = 2 and exists(u in N(v) | c(u) = 2))\n"
       "   and not (c(v) = 3 and exists(u in N(v) | c(u) = 3));\n"},
  };
  return cases;
}

}  // namespace lcs::testing

#endif  // LCSOLVE_TESTS_DSL_CORPUS_HPP_
