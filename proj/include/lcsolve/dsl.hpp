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

#ifndef LCSOLVE_DSL_HPP_
#define LCSOLVE_DSL_HPP_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lcsolve/graph.hpp"
#include "lcsolve/pns.hpp"
#include "lcsolve/problem.hpp"

namespace lcs::dsl {

enum class CmpOp { kEq, kNe, kLe, kGe, kLt, kGt };

const char* CmpOpName(CmpOp op);
bool Compare(CmpOp op, long a, long b);

// Predicate on the color of a neighbor u.
struct ColorPred {
  enum class Kind { kCmp, kAnd, kOr, kNot };
  Kind kind = Kind::kCmp;
  CmpOp op = CmpOp::kEq;
  int value = 0;
  std::shared_ptr<const ColorPred> a, b;
};

struct Arith {
  enum class Kind { kInt, kCenter, kCount, kSum, kAdd, kSub };
  Kind kind = Kind::kInt;
  long value = 0;
  bool closed = false;  // N[v] instead of N(v)
  std::shared_ptr<const ColorPred> pred;  // kCount
  std::shared_ptr<const Arith> a, b;
};

struct BoolExpr {
  enum class Kind { kCmp, kAnd, kOr, kNot, kImplies };
  Kind kind = Kind::kCmp;
  CmpOp op = CmpOp::kEq;
  std::shared_ptr<const Arith> lhs, rhs;
  std::shared_ptr<const BoolExpr> a, b;
};

struct ProblemSpec {
  int lo = 0;
  int hi = 0;
  std::string algebra;
  std::shared_ptr<const Arith> cost;
  std::shared_ptr<const BoolExpr> check;
  std::vector<std::pair<int, int>> caps;  // (color value, cap)
};

// Throws SyntaxError with kSyntaxError or kSymmetryViolation.
ProblemSpec parse_problem(const std::string& text);

// Canonical s-expression, stable across runs.
std::string to_sexpr(const ProblemSpec& spec);

struct CompileOptions {
  // Off: every count saturates at the degree only.
  bool infer_caps = true;
};

struct CompiledProblem {
  std::shared_ptr<const ProblemInstance> instance;
  std::shared_ptr<const PartialNeighborhoodSystem> pns;
  std::map<Color, int> caps;  // by color id
};

CompiledProblem compile_problem(const ProblemSpec& spec, const LabeledGraph& g,
                                const CompileOptions& options = {});

}  // namespace lcs::dsl

#endif  // LCSOLVE_DSL_HPP_
