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

#ifndef SUBFREE_NONMONOTONE_H_
#define SUBFREE_NONMONOTONE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "subfree/algorithms.h"

namespace subfree {

using CoinSource = std::function<bool()>;

// Exchange rule run on a surrogate objective g with the single weight
// w(u) = g(u | A(u)). Elements with w(u) <= 0 are always rejected.
Decision propose_nonmono_general(const OnlineState& st, ElementId u, double c);

// One round of the randomized exchange rule: S evolves deterministically, each
// newly accepted element joins `hat` when the coin comes up true, and anything
// evicted from S leaves `hat` as well.
Decision step_nonmono_general(OnlineState& st, ElementSet& hat, ElementId u, const CoinSource& coin, double c = 2.0);

// Exchange rule over g = E f(I_1/2(.)). The surrogate is tabulated over the
// objective's ground, so the ground holds at most 15 elements.
class NonmonoGeneralAlgorithm : public OnlineAlgorithm {
 public:
  NonmonoGeneralAlgorithm(const Objective& f, const Matroid& m, CoinSource coin, double c = 2.0);
  std::string name() const override { return "nonmono-general"; }
  Decision process(ElementId u) override;
  ElementSet solution() const override { return hat_; }
  // E f(hat) = g(S) exactly, since each member of S sits in hat independently
  // with probability 1/2.
  double certified_value() const override;
  double guaranteed_ratio() const override { return 1.0 / 16.0; }
  const OnlineState* state() const override { return &st_; }
  const Objective& surrogate() const { return *g_; }

 private:
  std::unique_ptr<Objective> g_;
  OnlineState st_;
  CoinSource coin_;
  double c_;
  ElementSet hat_;
};

// Slot sample J: for block i in [0,k) the slot i*rho + c_i with c_i in [0,rho).
std::vector<int> slots_from_choices(const std::vector<int>& choices, int rho);
std::vector<int> sample_slot_choices(int k, int rho, std::uint64_t seed);

// Threshold rule over g = E f(I_1/rho(.)) with rho k slots:
//   accept iff w(u) > (alpha * w(S) - rho * w(A)) / (rho k),
// evicting the minimum-w element when every slot is taken. The output keeps
// the occupants of the sampled slots J, one per block of rho slots.
class NonmonoUniformAlgorithm : public OnlineAlgorithm {
 public:
  static constexpr int kRho = 3;

  NonmonoUniformAlgorithm(const Objective& f, int k, std::vector<int> choices);
  NonmonoUniformAlgorithm(const Objective& f, int k, std::uint64_t seed);

  std::string name() const override { return "nonmono-uniform"; }
  Decision process(ElementId u) override;
  ElementSet solution() const override { return solution_for(choices_); }
  // Exact mean of f over all rho^k slot samples; NaN when rho^k > 10^5.
  double certified_value() const override;
  double guaranteed_ratio() const override { return alpha_.sampled_ratio(); }
  const OnlineState* state() const override { return &st_; }

  ElementSet solution_for(const std::vector<int>& choices) const;
  const std::vector<std::optional<ElementId>>& slots() const { return slots_; }
  double alpha() const { return alpha_.value; }
  const Objective& surrogate() const { return *g_; }

 private:
  int k_;
  AlphaConstant alpha_;
  std::unique_ptr<Objective> g_;
  std::unique_ptr<Matroid> capacity_;
  OnlineState st_;
  std::vector<int> choices_;
  std::vector<std::optional<ElementId>> slots_;
};

}  // namespace subfree

#endif  // SUBFREE_NONMONOTONE_H_
