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

#ifndef LCSOLVE_GLOBALS_HPP_
#define LCSOLVE_GLOBALS_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcsolve/problem.hpp"

namespace lcs {

// Deterministic automaton over the one-letter alphabet.
struct UnaryAutomaton {
  std::vector<int> delta;
  int start = 0;
  std::vector<bool> accepting;

  int num_states() const { return static_cast<int>(delta.size()); }
  bool accepts_length(long n) const;
};

struct SizeSpec {
  enum class Kind { kFinite, kResidue, kNonempty, kAtMostOne, kAny };
  Kind kind = Kind::kAny;
  std::set<int> values;  // kFinite
  int residue = 0;       // kResidue: sizes congruent to residue mod modulus
  int modulus = 1;
};

UnaryAutomaton build_size_automaton(const SizeSpec& spec);

struct GlobalConstraint {
  enum class Kind { kSize, kConnected, kAcyclic };
  Kind kind = Kind::kSize;
  std::vector<Color> class_colors;
  UnaryAutomaton automaton;  // kSize only

  bool tracks(Color c) const;
  std::string describe(const ProblemInstance& inst) const;
};

constexpr int kMaxGlobalConstraints = 4;

GlobalConstraint size_constraint(std::vector<Color> colors, const SizeSpec& spec);
GlobalConstraint connected_constraint(std::vector<Color> colors);
GlobalConstraint acyclic_constraint(std::vector<Color> colors);

// Renames component ids in order of first appearance along bag_order.
std::map<Vertex, int> canonical_components(const std::map<Vertex, int>& labeling,
                                           const std::vector<Vertex>& bag_order);

// Parses {"connected": [..], "acyclic": [..], "size": {"colors": [..],
// "in": [..] | "mod": [a, m] | "nonempty": true | "at_most_one": true}}.
// Color tokens are matched against the instance color names.
std::vector<GlobalConstraint> constraints_from_json(const nlohmann::json& j,
                                                    const ProblemInstance& inst);

}  // namespace lcs

#endif  // LCSOLVE_GLOBALS_HPP_
