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

#include "lcsolve/weights.hpp"

#include <algorithm>

#include "lcsolve/error.hpp"

namespace lcs {

Weight WeightAlgebra::combine(Weight a, Weight b) const {
  if (a.error || b.error) return Weight::Error();
  switch (kind_) {
    case AlgebraKind::kMinPlus:
    case AlgebraKind::kMaxPlus: {
      int64_t out = 0;
      if (__builtin_add_overflow(a.value, b.value, &out)) return Weight::Error();
      return Weight::Of(out);
    }
    case AlgebraKind::kMinMax:
      return Weight::Of(std::max(a.value, b.value));
    case AlgebraKind::kFeasibility:
      return Weight::Of(0);
  }
  return Weight::Error();
}

bool WeightAlgebra::precedes(Weight a, Weight b) const {
  if (b.error) return true;
  if (a.error) return false;
  if (kind_ == AlgebraKind::kMaxPlus) return a.value >= b.value;
  return a.value <= b.value;
}

bool WeightAlgebra::valid_cost(Weight w) const {
  if (w.error) return false;
  switch (kind_) {
    case AlgebraKind::kMinPlus:
    case AlgebraKind::kMaxPlus:
      return true;
    case AlgebraKind::kMinMax:
      return w.value >= 0;
    case AlgebraKind::kFeasibility:
      return w.value == 0;
  }
  return false;
}

std::string WeightAlgebra::name() const {
  switch (kind_) {
    case AlgebraKind::kMinPlus: return "min-plus";
    case AlgebraKind::kMaxPlus: return "max-plus";
    case AlgebraKind::kMinMax: return "min-max";
    case AlgebraKind::kFeasibility: return "feasibility";
  }
  return "?";
}

WeightAlgebra WeightAlgebra::FromName(const std::string& name) {
  if (name == "min-plus") return WeightAlgebra(AlgebraKind::kMinPlus);
  if (name == "max-plus") return WeightAlgebra(AlgebraKind::kMaxPlus);
  if (name == "min-max") return WeightAlgebra(AlgebraKind::kMinMax);
  if (name == "feasibility") return WeightAlgebra(AlgebraKind::kFeasibility);
  throw LcsError(ErrorCode::kInvalidParameter, "unknown algebra '" + name + "'");
}

std::string FormatWeight(Weight w) {
  return w.error ? "ERROR" : std::to_string(w.value);
}

}  // namespace lcs
