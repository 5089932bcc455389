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

#ifndef LCSOLVE_PNS_HPP_
#define LCSOLVE_PNS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcsolve/problem.hpp"

namespace lcs {

// Values of N_{v,i} are dense codes in [0, domain_size(v, i)).
using NValue = uint64_t;

// Partial neighborhood system. Colors are universe ids, not list positions.
class PartialNeighborhoodSystem {
 public:
  virtual ~PartialNeighborhoodSystem() = default;

  virtual uint64_t domain_size(Vertex v, Color i) const = 0;
  virtual NValue neutral(Vertex v, Color i) const = 0;
  virtual NValue combine(Vertex v, Color i, NValue a, NValue b) const = 0;
  // newN_{v,i}(u, j) for a neighbor u of v colored j.
  virtual NValue make(Vertex v, Color i, Vertex u, Color j) const = 0;
  virtual bool accept(Vertex v, Color i, NValue n) const = 0;
  virtual std::string describe(Vertex v, Color i, NValue n) const;
  virtual std::string name() const { return "pns"; }
};

// A system assembled from callables. Handy for the catalog and for tests.
class FunctionalPns : public PartialNeighborhoodSystem {
 public:
  std::string label = "functional";
  std::function<uint64_t(Vertex, Color)> size_fn;
  std::function<NValue(Vertex, Color)> neutral_fn;
  std::function<NValue(Vertex, Color, NValue, NValue)> combine_fn;
  std::function<NValue(Vertex, Color, Vertex, Color)> make_fn;
  std::function<bool(Vertex, Color, NValue)> accept_fn;
  std::function<std::string(Vertex, Color, NValue)> describe_fn;

  uint64_t domain_size(Vertex v, Color i) const override { return size_fn(v, i); }
  NValue neutral(Vertex v, Color i) const override {
    return neutral_fn ? neutral_fn(v, i) : 0;
  }
  NValue combine(Vertex v, Color i, NValue a, NValue b) const override {
    return combine_fn(v, i, a, b);
  }
  NValue make(Vertex v, Color i, Vertex u, Color j) const override {
    return make_fn(v, i, u, j);
  }
  bool accept(Vertex v, Color i, NValue n) const override {
    return accept_fn(v, i, n);
  }
  std::string describe(Vertex v, Color i, NValue n) const override;
  std::string name() const override { return label; }
};

// Mixed-radix code over a fixed list of digit radices.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<uint64_t> radix);
  uint64_t size() const { return size_; }
  int digits() const { return static_cast<int>(radix_.size()); }
  uint64_t radix(int d) const { return radix_[d]; }
  uint64_t get(NValue x, int d) const { return (x / stride_[d]) % radix_[d]; }
  NValue set(NValue x, int d, uint64_t value) const {
    return x + (value - get(x, d)) * stride_[d];
  }

 private:
  std::vector<uint64_t> radix_;
  std::vector<uint64_t> stride_;
  uint64_t size_ = 1;
};

// Tuple system over neighbor positions: digit 0 is unassigned, 1 is a
// conflict, 2 + k is the k-th color of that neighbor's list.
std::shared_ptr<PartialNeighborhoodSystem> generic_pns(
    std::shared_ptr<const ProblemInstance> inst);

// Per-color neighbor counters saturating at min(cap, degree). caps maps a
// color to its cap; colors without an entry use the degree. Requires the
// check to depend only on the center color and neighbor color counts.
std::shared_ptr<PartialNeighborhoodSystem> counting_pns(
    std::shared_ptr<const ProblemInstance> inst,
    const std::map<Color, int>& caps = {});

struct SelfCheckResult {
  bool ok = true;
  Vertex vertex = -1;
  std::vector<std::pair<Vertex, Color>> coloring;  // witness on N[v]
  std::string message;
  long colorings_checked = 0;
};

// Verifies the consistency equation at every vertex, exhaustively when the
// local colorings number at most sample_budget and by seeded sampling
// otherwise, plus the algebra laws and domain closure on reached values.
SelfCheckResult pns_selfcheck(const ProblemInstance& inst,
                              const PartialNeighborhoodSystem& pns,
                              long sample_budget = 20000);

}  // namespace lcs

#endif  // LCSOLVE_PNS_HPP_
