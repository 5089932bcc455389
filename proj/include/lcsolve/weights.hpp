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

#ifndef LCSOLVE_WEIGHTS_HPP_
#define LCSOLVE_WEIGHTS_HPP_

#include <cstdint>
#include <string>

namespace lcs {

struct Weight {
  int64_t value = 0;
  bool error = false;

  static Weight Of(int64_t v) { return {v, false}; }
  static Weight Error() { return {0, true}; }
  bool operator==(const Weight& o) const {
    return error == o.error && (error || value == o.value);
  }
  bool operator!=(const Weight& o) const { return !(*this == o); }
};

enum class AlgebraKind { kMinPlus, kMaxPlus, kMinMax, kFeasibility };

// (Weights, order, combine, neutral, Error) over 64-bit integers. Error is
// the infinity on the bad side of the order and absorbs everything.
class WeightAlgebra {
 public:
  WeightAlgebra() = default;
  explicit WeightAlgebra(AlgebraKind kind) : kind_(kind) {}

  AlgebraKind kind() const { return kind_; }
  Weight neutral() const { return Weight::Of(0); }
  Weight error() const { return Weight::Error(); }
  Weight combine(Weight a, Weight b) const;
  // a is at least as good as b.
  bool precedes(Weight a, Weight b) const;
  // Ties return the first argument.
  Weight min(Weight a, Weight b) const { return precedes(a, b) ? a : b; }
  bool strictly_better(Weight a, Weight b) const {
    return precedes(a, b) && !precedes(b, a);
  }
  // Whether w may be used as a vertex cost.
  bool valid_cost(Weight w) const;

  std::string name() const;
  static WeightAlgebra FromName(const std::string& name);

 private:
  AlgebraKind kind_ = AlgebraKind::kMinPlus;
};

std::string FormatWeight(Weight w);

}  // namespace lcs

#endif  // LCSOLVE_WEIGHTS_HPP_
