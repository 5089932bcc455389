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

#include "lcsolve/pns.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "lcsolve/error.hpp"

namespace lcs {

std::string PartialNeighborhoodSystem::describe(Vertex, Color, NValue n) const {
  return std::to_string(n);
}

std::string FunctionalPns::describe(Vertex v, Color i, NValue n) const {
  return describe_fn ? describe_fn(v, i, n) : std::to_string(n);
}

MixedRadix::MixedRadix(std::vector<uint64_t> radix) : radix_(std::move(radix)) {
  stride_.resize(radix_.size());
  size_ = 1;
  for (size_t d = 0; d < radix_.size(); ++d) {
    stride_[d] = size_;
    if (radix_[d] == 0 ||
        __builtin_mul_overflow(size_, radix_[d], &size_) ||
        size_ > (uint64_t{1} << 62)) {
      throw LcsError(ErrorCode::kBudgetExceeded,
                     "partial neighborhood domain does not fit in 62 bits");
    }
  }
}

namespace {

class GenericPns : public PartialNeighborhoodSystem {
 public:
  explicit GenericPns(std::shared_ptr<const ProblemInstance> inst)
      : inst_(std::move(inst)) {
    if (inst_->radius != 1) {
      throw LcsError(ErrorCode::kInvalidInput, "generic system needs radius 1");
    }
    const auto& g = inst_->graph;
    codes_.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
      std::vector<uint64_t> radix;
      for (Vertex u : g.neighbors(v)) radix.push_back(inst_->lists[u].size() + 2);
      codes_[v] = MixedRadix(radix);
    }
  }

  uint64_t domain_size(Vertex v, Color) const override {
    return codes_[v].size();
  }
  NValue neutral(Vertex, Color) const override { return 0; }
  NValue combine(Vertex v, Color, NValue a, NValue b) const override {
    const MixedRadix& mr = codes_[v];
    NValue out = 0;
    for (int h = mr.digits() - 1; h >= 0; --h) {
      const uint64_t x = mr.get(a, h);
      const uint64_t y = mr.get(b, h);
      uint64_t z;
      if (x == y || y == 0) {
        z = x;
      } else if (x == 0) {
        z = y;
      } else {
        z = 1;
      }
      out = out * mr.radix(h) + z;
    }
    return out;
  }
  NValue make(Vertex v, Color, Vertex u, Color j) const override {
    const auto nb = inst_->graph.neighbors(v);
    const int h = static_cast<int>(std::lower_bound(nb.begin(), nb.end(), u) -
                                   nb.begin());
    const int idx = inst_->list_index(u, j);
    return codes_[v].set(0, h, 2 + idx);
  }
  bool accept(Vertex v, Color i, NValue n) const override {
    const MixedRadix& mr = codes_[v];
    LocalColoring lc;
    lc.center = v;
    lc.center_color = i;
    const auto nb = inst_->graph.neighbors(v);
    for (int h = 0; h < mr.digits(); ++h) {
      const uint64_t d = mr.get(n, h);
      if (d < 2) return false;
      lc.members.push_back(nb[h]);
      lc.colors.push_back(inst_->lists[nb[h]][d - 2]);
    }
    return inst_->check(lc);
  }
  std::string describe(Vertex v, Color, NValue n) const override {
    const MixedRadix& mr = codes_[v];
    std::string s = "(";
    for (int h = 0; h < mr.digits(); ++h) {
      const uint64_t d = mr.get(n, h);
      if (h) s += ",";
      if (d == 0) {
        s += "_";
      } else if (d == 1) {
        s += "x";
      } else {
        s += inst_->color_names[inst_->lists[inst_->graph.neighbors(v)[h]][d - 2]];
      }
    }
    return s + ")";
  }
  std::string name() const override { return "generic"; }

 private:
  std::shared_ptr<const ProblemInstance> inst_;
  std::vector<MixedRadix> codes_;
};

class CountingPns : public PartialNeighborhoodSystem {
 public:
  CountingPns(std::shared_ptr<const ProblemInstance> inst,
              const std::map<Color, int>& caps)
      : inst_(std::move(inst)) {
    if (inst_->radius != 1) {
      throw LcsError(ErrorCode::kInvalidInput, "counting system needs radius 1");
    }
    const auto& g = inst_->graph;
    const int n = g.order();
    colors_.resize(n);
    caps_.resize(n);
    slot_.assign(n, std::vector<int>(inst_->num_colors(), -1));
    codes_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      const auto nb = g.neighbors(v);
      std::vector<uint64_t> radix;
      if (!nb.empty()) {
        const std::vector<Color>& first = inst_->lists[nb[0]];
        std::set<Color> want(first.begin(), first.end());
        for (Vertex u : nb) {
          const auto& l = inst_->lists[u];
          if (std::set<Color>(l.begin(), l.end()) != want) {
            throw LcsError(ErrorCode::kInvalidInput,
                           "counting system needs equal lists around vertex " +
                               std::to_string(v));
          }
        }
        colors_[v] = first;
        for (size_t k = 0; k < first.size(); ++k) {
          const Color c = first[k];
          int cap = static_cast<int>(nb.size());
          auto it = caps.find(c);
          if (it != caps.end()) cap = std::min(cap, std::max(0, it->second));
          caps_[v].push_back(cap);
          slot_[v][c] = static_cast<int>(k);
          radix.push_back(cap + 1);
        }
      }
      codes_[v] = MixedRadix(radix);
    }
  }

  uint64_t domain_size(Vertex v, Color) const override {
    return codes_[v].size();
  }
  NValue neutral(Vertex, Color) const override { return 0; }
  NValue combine(Vertex v, Color, NValue a, NValue b) const override {
    const MixedRadix& mr = codes_[v];
    NValue out = 0;
    for (int k = mr.digits() - 1; k >= 0; --k) {
      const uint64_t s = std::min<uint64_t>(mr.get(a, k) + mr.get(b, k),
                                            caps_[v][k]);
      out = out * mr.radix(k) + s;
    }
    return out;
  }
  NValue make(Vertex v, Color, Vertex, Color j) const override {
    const int k = slot_[v][j];
    if (k < 0 || caps_[v][k] == 0) return 0;
    return codes_[v].set(0, k, 1);
  }
  bool accept(Vertex v, Color i, NValue n) const override {
    const MixedRadix& mr = codes_[v];
    const auto nb = inst_->graph.neighbors(v);
    LocalColoring lc;
    lc.center = v;
    lc.center_color = i;
    lc.members.assign(nb.begin(), nb.end());
    size_t used = 0;
    int saturated = -1;
    for (int k = 0; k < mr.digits(); ++k) {
      const uint64_t cnt = mr.get(n, k);
      if (cnt == static_cast<uint64_t>(caps_[v][k]) && saturated < 0) {
        saturated = k;
      }
      for (uint64_t x = 0; x < cnt; ++x) lc.colors.push_back(colors_[v][k]);
      used += cnt;
    }
    if (used > nb.size()) return false;
    if (used < nb.size()) {
      if (saturated < 0) return false;
      // Saturated counters stand for "at least", so the spare neighbors
      // take that color.
      std::vector<Color> filled;
      for (int k = 0; k < mr.digits(); ++k) {
        uint64_t cnt = mr.get(n, k);
        if (k == saturated) cnt += nb.size() - used;
        for (uint64_t x = 0; x < cnt; ++x) filled.push_back(colors_[v][k]);
      }
      lc.colors = filled;
    }
    return inst_->check(lc);
  }
  std::string describe(Vertex v, Color, NValue n) const override {
    const MixedRadix& mr = codes_[v];
    std::string s = "[";
    for (int k = 0; k < mr.digits(); ++k) {
      if (k) s += ",";
      s += inst_->color_names[colors_[v][k]] + ":" + std::to_string(mr.get(n, k));
    }
    return s + "]";
  }
  std::string name() const override { return "counting"; }

 private:
  std::shared_ptr<const ProblemInstance> inst_;
  std::vector<std::vector<Color>> colors_;
  std::vector<std::vector<int>> caps_;
  std::vector<std::vector<int>> slot_;
  std::vector<MixedRadix> codes_;
};

}  // namespace

std::shared_ptr<PartialNeighborhoodSystem> generic_pns(
    std::shared_ptr<const ProblemInstance> inst) {
  return std::make_shared<GenericPns>(std::move(inst));
}

std::shared_ptr<PartialNeighborhoodSystem> counting_pns(
    std::shared_ptr<const ProblemInstance> inst,
    const std::map<Color, int>& caps) {
  return std::make_shared<CountingPns>(std::move(inst), caps);
}

SelfCheckResult pns_selfcheck(const ProblemInstance& inst,
                              const PartialNeighborhoodSystem& pns,
                              long sample_budget) {
  if (inst.radius != 1) {
    throw LcsError(ErrorCode::kInvalidInput, "self-check needs radius 1");
  }
  SelfCheckResult res;
  const auto& g = inst.graph;
  auto fail = [&](Vertex v, const LocalColoring* lc, std::string msg) {
    res.ok = false;
    res.vertex = v;
    res.message = std::move(msg);
    if (lc) {
      res.coloring.push_back({v, lc->center_color});
      for (size_t h = 0; h < lc->members.size(); ++h) {
        res.coloring.push_back({lc->members[h], lc->colors[h]});
      }
    }
    return res;
  };
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto nb = g.neighbors(v);
    std::vector<uint64_t> radix{inst.lists[v].size()};
    for (Vertex u : nb) radix.push_back(inst.lists[u].size());
    double total = 1;
    for (uint64_t r : radix) total *= static_cast<double>(r);
    const bool exhaustive = total <= static_cast<double>(sample_budget);
    const long count = exhaustive ? static_cast<long>(total) : sample_budget;
    std::mt19937_64 rng(0x5eed0000u + static_cast<uint64_t>(v));
    std::vector<uint64_t> digit(radix.size(), 0);
    std::map<Color, std::vector<NValue>> seen;
    for (long it = 0; it < count; ++it) {
      if (exhaustive) {
        if (it > 0) {
          for (size_t d = 0; d < radix.size(); ++d) {
            if (++digit[d] < radix[d]) break;
            digit[d] = 0;
          }
        }
      } else {
        for (size_t d = 0; d < radix.size(); ++d) digit[d] = rng() % radix[d];
      }
      LocalColoring lc;
      lc.center = v;
      lc.center_color = inst.lists[v][digit[0]];
      for (size_t h = 0; h < nb.size(); ++h) {
        lc.members.push_back(nb[h]);
        lc.colors.push_back(inst.lists[nb[h]][digit[h + 1]]);
      }
      const Color i = lc.center_color;
      const uint64_t size = pns.domain_size(v, i);
      NValue acc = pns.neutral(v, i);
      if (acc >= size) return fail(v, &lc, "neutral outside the domain");
      auto& pool = seen[i];
      for (size_t h = 0; h < nb.size(); ++h) {
        const NValue x = pns.make(v, i, nb[h], lc.colors[h]);
        if (x >= size) return fail(v, &lc, "newN outside the domain");
        acc = pns.combine(v, i, acc, x);
        if (acc >= size) return fail(v, &lc, "combine outside the domain");
        if (pool.size() < 24 &&
            std::find(pool.begin(), pool.end(), x) == pool.end()) {
          pool.push_back(x);
        }
        if (pool.size() < 24 &&
            std::find(pool.begin(), pool.end(), acc) == pool.end()) {
          pool.push_back(acc);
        }
      }
      ++res.colorings_checked;
      if (pns.accept(v, i, acc) != inst.check(lc)) {
        return fail(v, &lc, "accept disagrees with check");
      }
    }
    for (const auto& [i, pool] : seen) {
      const NValue e = pns.neutral(v, i);
      for (NValue a : pool) {
        if (pns.combine(v, i, e, a) != a || pns.combine(v, i, a, e) != a) {
          return fail(v, nullptr, "neutral law fails for color " +
                                      inst.color_names[i]);
        }
        for (NValue b : pool) {
          if (pns.combine(v, i, a, b) != pns.combine(v, i, b, a)) {
            return fail(v, nullptr, "combine not commutative");
          }
          for (NValue c : pool) {
            if (pns.combine(v, i, pns.combine(v, i, a, b), c) !=
                pns.combine(v, i, a, pns.combine(v, i, b, c))) {
              return fail(v, nullptr, "combine not associative");
            }
          }
        }
      }
    }
  }
  return res;
}

}  // namespace lcs
