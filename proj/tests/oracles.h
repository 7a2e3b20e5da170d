// Copyright 2026 The Authors.
//
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


// Independent reference computations for the unit tests. Nothing here calls
// the library's enumerators or extensions; set values come from
// Objective::value only.

#ifndef SUBFREE_TESTS_ORACLES_H_
#define SUBFREE_TESTS_ORACLES_H_

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "subfree/element.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"

namespace subfree::testing {

inline ElementSet subset_of(std::span<const ElementId> ground, std::uint32_t mask) {
  ElementSet out;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) out.push_back(ground[i]);
  }
  return make_set(out);
}

// Independence straight from the definition of each matroid kind.
inline bool naive_independent(const Matroid& m, std::span<const ElementId> s) {
  if (const auto* u = std::get_if<UniformMatroid>(&m.variant())) return static_cast<int>(s.size()) <= u->k;
  if (const auto* p = std::get_if<PartitionMatroid>(&m.variant())) {
    std::map<int, int> count;
    for (ElementId e : s) ++count[p->part_of.at(e)];
    for (auto [part, c] : count) {
      if (c > p->capacity.at(part)) return false;
    }
    return true;
  }
  const auto& x = std::get<ExplicitMatroid>(m.variant());
  for (std::uint32_t maximal : x.maximal) {
    bool inside = true;
    for (ElementId e : s) {
      int idx = -1;
      for (std::size_t i = 0; i < x.ground.size(); ++i) {
        if (x.ground[i] == e) idx = static_cast<int>(i);
      }
      if (idx < 0 || !(maximal & (std::uint32_t{1} << idx))) inside = false;
    }
    if (inside) return true;
  }
  return false;
}

inline double naive_opt(const Objective& f, const Matroid& m, std::span<const ElementId> arrived) {
  double best = -1e300;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << arrived.size()); ++mask) {
    ElementSet s = subset_of(arrived, mask);
    if (naive_independent(m, s)) best = std::max(best, f.value(s));
  }
  return best;
}

// Weighted coverage evaluated from the raw description.
inline double coverage_value(const std::vector<double>& item_weight,
                             const std::map<ElementId, std::vector<std::uint32_t>>& covers,
                             std::span<const ElementId> s) {
  std::vector<bool> hit(item_weight.size(), false);
  for (ElementId e : s) {
    for (std::uint32_t i : covers.at(e)) hit[i] = true;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) total += item_weight[i];
  }
  return total;
}

// E f(R) where each ground[i] is kept independently with probability p[i].
inline double product_expectation(const Objective& f, std::span<const ElementId> ground, std::span<const double> p) {
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << ground.size()); ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < ground.size(); ++i) prob *= (mask & (std::uint32_t{1} << i)) ? p[i] : 1.0 - p[i];
    total += prob * f.value(subset_of(ground, mask));
  }
  return total;
}

}  // namespace subfree::testing

#endif  // SUBFREE_TESTS_ORACLES_H_
