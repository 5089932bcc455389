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

#include "lcsolve/globals.hpp"

#include <algorithm>

#include "lcsolve/error.hpp"

namespace lcs {

bool UnaryAutomaton::accepts_length(long n) const {
  int q = start;
  for (long i = 0; i < n; ++i) q = delta[q];
  return accepting[q];
}

UnaryAutomaton build_size_automaton(const SizeSpec& spec) {
  UnaryAutomaton a;
  switch (spec.kind) {
    case SizeSpec::Kind::kFinite: {
      if (spec.values.empty()) {
        throw LcsError(ErrorCode::kEmptySet, "size set is empty");
      }
      if (*spec.values.begin() < 0) {
        throw LcsError(ErrorCode::kInvalidParameter, "negative class size");
      }
      const int m = *spec.values.rbegin();
      a.delta.resize(m + 2);
      a.accepting.assign(m + 2, false);
      for (int i = 0; i <= m; ++i) a.delta[i] = i + 1;
      a.delta[m + 1] = m + 1;
      for (int s : spec.values) a.accepting[s] = true;
      return a;
    }
    case SizeSpec::Kind::kResidue: {
      if (spec.modulus < 1) {
        throw LcsError(ErrorCode::kInvalidParameter, "modulus must be positive");
      }
      const int m = spec.modulus;
      a.delta.resize(m);
      a.accepting.assign(m, false);
      for (int i = 0; i < m; ++i) a.delta[i] = (i + 1) % m;
      a.accepting[((spec.residue % m) + m) % m] = true;
      return a;
    }
    case SizeSpec::Kind::kNonempty:
      a.delta = {1, 1};
      a.accepting = {false, true};
      return a;
    case SizeSpec::Kind::kAtMostOne: {
      SizeSpec f;
      f.kind = SizeSpec::Kind::kFinite;
      f.values = {0, 1};
      return build_size_automaton(f);
    }
    case SizeSpec::Kind::kAny:
      a.delta = {0};
      a.accepting = {true};
      return a;
  }
  return a;
}

bool GlobalConstraint::tracks(Color c) const {
  return std::find(class_colors.begin(), class_colors.end(), c) !=
         class_colors.end();
}

std::string GlobalConstraint::describe(const ProblemInstance& inst) const {
  std::string s;
  switch (kind) {
    case Kind::kSize: s = "size"; break;
    case Kind::kConnected: s = "connected"; break;
    case Kind::kAcyclic: s = "acyclic"; break;
  }
  s += "{";
  for (size_t i = 0; i < class_colors.size(); ++i) {
    if (i) s += ",";
    s += inst.color_names[class_colors[i]];
  }
  return s + "}";
}

namespace {

void RequireColors(const std::vector<Color>& colors) {
  if (colors.empty()) {
    throw LcsError(ErrorCode::kInvalidParameter, "constraint names no colors");
  }
}

}  // namespace

GlobalConstraint size_constraint(std::vector<Color> colors,
                                 const SizeSpec& spec) {
  RequireColors(colors);
  GlobalConstraint g;
  g.kind = GlobalConstraint::Kind::kSize;
  g.class_colors = std::move(colors);
  g.automaton = build_size_automaton(spec);
  return g;
}

GlobalConstraint connected_constraint(std::vector<Color> colors) {
  RequireColors(colors);
  GlobalConstraint g;
  g.kind = GlobalConstraint::Kind::kConnected;
  g.class_colors = std::move(colors);
  return g;
}

GlobalConstraint acyclic_constraint(std::vector<Color> colors) {
  RequireColors(colors);
  GlobalConstraint g;
  g.kind = GlobalConstraint::Kind::kAcyclic;
  g.class_colors = std::move(colors);
  return g;
}

std::map<Vertex, int> canonical_components(
    const std::map<Vertex, int>& labeling, const std::vector<Vertex>& bag_order) {
  std::map<int, int> rename;
  std::map<Vertex, int> out;
  for (Vertex v : bag_order) {
    auto it = labeling.find(v);
    if (it == labeling.end()) continue;
    auto [r, fresh] = rename.emplace(it->second, static_cast<int>(rename.size()) + 1);
    out[v] = r->second;
  }
  // Vertices missing from bag_order keep their relative order after the rest.
  for (const auto& [v, c] : labeling) {
    if (out.count(v)) continue;
    auto [r, fresh] = rename.emplace(c, static_cast<int>(rename.size()) + 1);
    out[v] = r->second;
  }
  return out;
}

namespace {

std::vector<Color> ColorsFromJson(const nlohmann::json& j,
                                  const ProblemInstance& inst) {
  std::vector<Color> out;
  const nlohmann::json arr = j.is_array() ? j : nlohmann::json::array({j});
  for (const auto& x : arr) {
    const std::string tok = x.is_string() ? x.get<std::string>() : x.dump();
    out.push_back(inst.color_by_name(tok));
  }
  return out;
}

GlobalConstraint SizeFromJson(const nlohmann::json& j,
                              const ProblemInstance& inst) {
  if (!j.is_object() || !j.contains("colors")) {
    throw LcsError(ErrorCode::kInvalidParameter,
                   "size constraint needs an object with \"colors\"");
  }
  SizeSpec spec;
  if (j.contains("in")) {
    spec.kind = SizeSpec::Kind::kFinite;
    for (const auto& x : j["in"]) spec.values.insert(x.get<int>());
  } else if (j.contains("mod")) {
    spec.kind = SizeSpec::Kind::kResidue;
    spec.residue = j["mod"].at(0).get<int>();
    spec.modulus = j["mod"].at(1).get<int>();
  } else if (j.value("nonempty", false)) {
    spec.kind = SizeSpec::Kind::kNonempty;
  } else if (j.value("at_most_one", false)) {
    spec.kind = SizeSpec::Kind::kAtMostOne;
  } else {
    spec.kind = SizeSpec::Kind::kAny;
  }
  return size_constraint(ColorsFromJson(j["colors"], inst), spec);
}

}  // namespace

std::vector<GlobalConstraint> constraints_from_json(const nlohmann::json& j,
                                                    const ProblemInstance& inst) {
  std::vector<GlobalConstraint> out;
  if (j.is_null()) return out;
  if (!j.is_object()) {
    throw LcsError(ErrorCode::kInvalidParameter, "constraints must be an object");
  }
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "connected") {
        out.push_back(connected_constraint(ColorsFromJson(val, inst)));
      } else if (key == "acyclic") {
        out.push_back(acyclic_constraint(ColorsFromJson(val, inst)));
      } else if (key == "size") {
        if (val.is_array()) {
          for (const auto& x : val) out.push_back(SizeFromJson(x, inst));
        } else {
          out.push_back(SizeFromJson(val, inst));
        }
      } else {
        throw LcsError(ErrorCode::kInvalidParameter,
                       "unknown constraint '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw LcsError(ErrorCode::kInvalidParameter, e.what());
  }
  if (static_cast<int>(out.size()) > kMaxGlobalConstraints) {
    throw LcsError(ErrorCode::kTooManyConstraints,
                   std::to_string(out.size()) + " constraints");
  }
  return out;
}

}  // namespace lcs
