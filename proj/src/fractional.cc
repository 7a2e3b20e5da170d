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

#include "subfree/fractional.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace subfree {

FractionalState::FractionalState(const Objective& f, const Matroid& m, int units_per_one, double alpha,
                                 std::uint64_t seed, EvalMode mode)
    : f_(&f), m_(&m), units_per_one_(units_per_one), alpha_(alpha), mode_(mode), seed_(seed) {
  if (!m.is_partition()) throw AlgorithmError("the fractional algorithm needs a partition matroid");
  if (units_per_one < 1) throw AlgorithmError("1/Delta must be a positive integer");
  const auto& pm = m.as_partition();
  for (int l = 0; l < static_cast<int>(pm.capacity.size()); ++l) part_state(l);
}

void FractionalState::draw_points(Part& p, std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  p.points.assign(static_cast<std::size_t>(p.capacity), 0.0);
  for (double& z : p.points) z = p.capacity * (1.0 - unit(rng));
}

FractionalState::Part& FractionalState::part_state(int part) {
  auto it = parts_.find(part);
  if (it != parts_.end()) return it->second;
  Part p;
  p.capacity = m_->as_partition().capacity.at(static_cast<std::size_t>(part));
  p.slot_owner.assign(static_cast<std::size_t>(p.capacity) * units_per_one_, std::nullopt);
  std::seed_seq seq{seed_, static_cast<std::uint64_t>(part)};
  std::mt19937_64 rng(seq);
  draw_points(p, rng);
  return parts_.emplace(part, std::move(p)).first->second;
}

void FractionalState::resample(std::uint64_t seed) {
  seed_ = seed;
  for (auto& [l, p] : parts_) {
    std::seed_seq seq{seed_, static_cast<std::uint64_t>(l)};
    std::mt19937_64 rng(seq);
    draw_points(p, rng);
  }
}

FractionalTrace FractionalState::step(ElementId u) {
  const int part = m_->as_partition().part(u);
  Part& p = part_state(part);
  const double delta = 1.0 / units_per_one_;
  const int capacity_units = p.capacity * units_per_one_;
  const int limit = 64 * capacity_units + 4096;
  FractionalTrace trace;
  trace.element = u;
  for (;;) {
    const double w = soft_marginal_rate(*f_, u, history_mass(), mode_);
    const double threshold = (alpha_ * p.live_weight - p.history_weight) / p.capacity;
    if (!(w > threshold)) break;
    if (trace.units_added >= limit) throw AlgorithmError("fractional step did not settle");
    if (p.live_units == capacity_units) {
      std::optional<std::size_t> victim;
      for (std::size_t i = 0; i < units_.size(); ++i) {
        const MassUnit& mu = units_[i];
        if (!mu.live || mu.part != part) continue;
        if (!victim || mu.weight < units_[*victim].weight) victim = i;
      }
      MassUnit& v = units_[*victim];
      v.live = false;
      p.slot_owner[static_cast<std::size_t>(v.slot)].reset();
      p.live_weight -= v.weight * delta;
      --p.live_units;
      if (--live_units_[v.owner] == 0) live_units_.erase(v.owner);
      ++trace.units_removed;
    }
    std::int64_t slot = 0;
    while (p.slot_owner[static_cast<std::size_t>(slot)]) ++slot;
    p.slot_owner[static_cast<std::size_t>(slot)] = units_.size();
    units_.push_back(MassUnit{u, part, w, slot, true});
    p.live_weight += w * delta;
    p.history_weight += w * delta;
    ++p.live_units;
    ++live_units_[u];
    ++history_units_[u];
    max_unit_weight_ = std::max(max_unit_weight_, w);
    ++trace.units_added;
    trace.unit_weights.push_back(w);
  }
  return trace;
}

ElementSet FractionalState::round() const {
  std::vector<ElementId> out;
  for (const auto& [l, p] : parts_) {
    const auto n = static_cast<std::int64_t>(p.slot_owner.size());
    for (double z : p.points) {
      std::int64_t slot = static_cast<std::int64_t>(std::ceil(z * units_per_one_)) - 1;
      slot = std::clamp<std::int64_t>(slot, 0, n - 1);
      if (const auto& owner = p.slot_owner[static_cast<std::size_t>(slot)]) out.push_back(units_[*owner].owner);
    }
  }
  return make_set(std::move(out));
}

FractionalVector FractionalState::mass() const {
  FractionalVector out;
  for (const auto& [e, n] : live_units_) out[e] = static_cast<double>(n) / units_per_one_;
  return out;
}

FractionalVector FractionalState::history_mass() const {
  FractionalVector out;
  for (const auto& [e, n] : history_units_) out[e] = static_cast<double>(n) / units_per_one_;
  return out;
}

double FractionalState::part_live_weight(int part) const {
  auto it = parts_.find(part);
  return it == parts_.end() ? 0.0 : it->second.live_weight;
}

double FractionalState::part_history_weight(int part) const {
  auto it = parts_.find(part);
  return it == parts_.end() ? 0.0 : it->second.history_weight;
}

double FractionalState::part_mass(int part) const {
  auto it = parts_.find(part);
  return it == parts_.end() ? 0.0 : static_cast<double>(it->second.live_units) / units_per_one_;
}

std::vector<int> FractionalState::parts() const {
  std::vector<int> out;
  for (const auto& [l, p] : parts_) out.push_back(l);
  return out;
}

const std::vector<double>& FractionalState::points(int part) const { return parts_.at(part).points; }

PartitionFractionalAlgorithm::PartitionFractionalAlgorithm(const Objective& f, const Matroid& m, int units_per_one,
                                                           std::uint64_t seed)
    : OnlineAlgorithm(f), state_(f, m, units_per_one, solve_alpha(std::nullopt, 1).value, seed) {
  if (!f.is_monotone()) throw AlgorithmError("the fractional algorithm needs a monotone objective");
}

Decision PartitionFractionalAlgorithm::process(ElementId u) {
  last_ = state_.step(u);
  Decision d;
  d.element = u;
  d.accepted = last_.units_added > 0;
  if (!last_.unit_weights.empty()) d.weight = last_.unit_weights.front();
  return d;
}

double PartitionFractionalAlgorithm::certified_value() const {
  const FractionalVector s = state_.mass();
  if (s.size() > kMaxExactSupport) return std::numeric_limits<double>::quiet_NaN();
  return soft_value(objective(), s);
}

}  // namespace subfree
