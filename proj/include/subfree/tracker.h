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

#ifndef SUBFREE_TRACKER_H_
#define SUBFREE_TRACKER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "subfree/element.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"

namespace subfree {

class TrackerError : public std::logic_error {
 public:
  explicit TrackerError(const std::string& what) : std::logic_error(what) {}
};

// Feasible set S, the history A of every accepted element, and the three
// weight functions:
//   w(u)   = f(u | A(u))        stored at acceptance
//   w_S(u) = f(u | A(u) & S)    recomputed on demand, cached until an
//                               earlier interacting element leaves S
//   ŵ(u)   = w_S(u) captured when u is evicted
// A(u) is the history strictly before u was accepted.
class OnlineState {
 public:
  OnlineState(const Objective& f, const Matroid& m);

  const Objective& objective() const { return *f_; }
  const Matroid& matroid() const { return *m_; }

  // f(u | A); u must not be in A.
  double w_arrival(ElementId u) const;
  // f(u | A(u) & S) for u in A.
  double w_S(ElementId u) const;

  // S <- S - evict + u and A <- A + u, storing w(u). Freezes ŵ(evict) first.
  void accept(ElementId u, std::optional<ElementId> evict);

  bool in_history(ElementId u) const { return index_.contains(u); }
  bool in_feasible(ElementId u) const { return set_contains(s_sorted_, u); }
  const ElementSet& feasible() const { return s_sorted_; }
  // S in acceptance order.
  const std::vector<ElementId>& feasible_order() const { return s_order_; }
  const std::vector<ElementId>& history() const { return history_; }
  std::size_t acceptance_index(ElementId u) const;

  double stored_w(ElementId u) const;
  std::optional<double> frozen_weight(ElementId u) const;
  // w_S(u) while u is in S, the frozen value afterwards.
  double hat_weight(ElementId u) const;

  // w(A)
  double history_weight() const { return history_weight_; }
  // sum of stored w over S
  double feasible_weight() const;
  // sum of w_S over S
  double feasible_w_S() const;

  double value() const { return f_->value(s_order_); }
  double history_value() const { return history_acc_.value(); }

 private:
  const Objective* f_;
  const Matroid* m_;
  std::unordered_map<ElementId, std::size_t> index_;
  std::vector<ElementId> history_;
  std::vector<double> w_;
  std::vector<ElementId> s_order_;
  ElementSet s_sorted_;
  std::map<ElementId, double> frozen_;
  mutable std::unordered_map<ElementId, double> ws_cache_;
  ValueAccumulator history_acc_;
  double history_weight_ = 0.0;
};

}  // namespace subfree

#endif  // SUBFREE_TRACKER_H_
