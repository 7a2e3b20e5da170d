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

#include "subfree/tracker.h"

#include <algorithm>

namespace subfree {

OnlineState::OnlineState(const Objective& f, const Matroid& m) : f_(&f), m_(&m), history_acc_(f) {}

double OnlineState::w_arrival(ElementId u) const {
  if (in_history(u)) throw TrackerError("element " + std::to_string(u) + " was already accepted");
  return history_acc_.gain(u);
}

std::size_t OnlineState::acceptance_index(ElementId u) const {
  auto it = index_.find(u);
  if (it == index_.end()) throw TrackerError("element " + std::to_string(u) + " is not in the history");
  return it->second;
}

double OnlineState::w_S(ElementId u) const {
  const std::size_t idx = acceptance_index(u);
  const bool present = in_feasible(u);
  if (present) {
    auto it = ws_cache_.find(u);
    if (it != ws_cache_.end()) return it->second;
  }
  ValueAccumulator acc(*f_);
  for (ElementId v : s_order_) {
    if (index_.at(v) >= idx) break;
    acc.add(v);
  }
  const double w = acc.gain(u);
  if (present) ws_cache_.emplace(u, w);
  return w;
}

void OnlineState::accept(ElementId u, std::optional<ElementId> evict) {
  if (in_history(u)) throw TrackerError("element " + std::to_string(u) + " was already accepted");
  if (evict && !in_feasible(*evict)) throw TrackerError("evicted element is not in S");
  std::vector<ElementId> next = s_sorted_;
  if (evict) next = set_erase(std::move(next), *evict);
  next = set_insert(std::move(next), u);
  if (!m_->is_independent(next)) throw TrackerError("accepting element " + std::to_string(u) + " breaks independence");

  const double w = history_acc_.gain(u);
  if (evict) {
    const ElementId e = *evict;
    const std::size_t eidx = index_.at(e);
    frozen_[e] = w_S(e);
    for (ElementId v : s_order_) {
      if (index_.at(v) > eidx && f_->interacts(e, v)) ws_cache_.erase(v);
    }
    ws_cache_.erase(e);
    s_order_.erase(std::find(s_order_.begin(), s_order_.end(), e));
  }
  index_.emplace(u, history_.size());
  history_.push_back(u);
  w_.push_back(w);
  history_weight_ += w;
  history_acc_.add(u);
  s_order_.push_back(u);
  s_sorted_ = std::move(next);
}

double OnlineState::stored_w(ElementId u) const { return w_[acceptance_index(u)]; }

std::optional<double> OnlineState::frozen_weight(ElementId u) const {
  auto it = frozen_.find(u);
  if (it == frozen_.end()) return std::nullopt;
  return it->second;
}

double OnlineState::hat_weight(ElementId u) const {
  if (in_feasible(u)) return w_S(u);
  auto frozen = frozen_weight(u);
  if (!frozen) throw TrackerError("element " + std::to_string(u) + " has no frozen weight");
  return *frozen;
}

double OnlineState::feasible_weight() const {
  double total = 0.0;
  for (ElementId v : s_order_) total += stored_w(v);
  return total;
}

double OnlineState::feasible_w_S() const {
  double total = 0.0;
  for (ElementId v : s_order_) total += w_S(v);
  return total;
}

}  // namespace subfree
