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

#include "subfree/algorithms.h"

#include <algorithm>
#include <vector>

namespace subfree {
namespace {

void require_monotone(const OnlineState& st) {
  if (!st.objective().is_monotone()) throw AlgorithmError("this rule needs a monotone objective");
}

// Minimum w_S over `candidates`, scanning in acceptance order so the earliest
// accepted element wins ties.
std::optional<ElementId> argmin_w_S(const OnlineState& st, std::span<const ElementId> candidates) {
  std::vector<ElementId> ordered(candidates.begin(), candidates.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](ElementId a, ElementId b) { return st.acceptance_index(a) < st.acceptance_index(b); });
  std::optional<ElementId> best;
  double best_w = 0.0;
  for (ElementId v : ordered) {
    const double w = st.w_S(v);
    if (!best || w < best_w) {
      best = v;
      best_w = w;
    }
  }
  return best;
}

}  // namespace

Decision propose_k_uniform(const OnlineState& st, ElementId u, double alpha) {
  require_monotone(st);
  if (!st.matroid().is_uniform()) throw AlgorithmError("the threshold rule needs a uniform matroid");
  const int k = st.matroid().as_uniform().k;
  Decision d;
  d.element = u;
  d.weight = st.w_arrival(u);
  d.threshold = (alpha * st.feasible_w_S() - st.history_weight()) / k;
  if (!(d.weight > d.threshold)) return d;
  d.accepted = true;
  if (static_cast<int>(st.feasible().size()) >= k) {
    d.evicted = argmin_w_S(st, st.feasible_order());
    d.evicted_weight = st.w_S(*d.evicted);
  }
  return d;
}

Decision propose_general_matroid(const OnlineState& st, ElementId u, double c) {
  require_monotone(st);
  if (!(c > 1.0)) throw AlgorithmError("the swap constant must exceed 1");
  Decision d;
  d.element = u;
  d.weight = st.w_arrival(u);
  const ElementSet with_u = set_insert(st.feasible(), u);
  if (st.matroid().is_independent(with_u) && d.weight > 0.0) {
    d.accepted = true;
    return d;
  }
  const ElementSet t = st.matroid().exchange_set(st.feasible(), u);
  const auto victim = argmin_w_S(st, t);
  if (!victim) return d;
  const double wv = st.w_S(*victim);
  d.threshold = c * wv;
  if (d.weight >= d.threshold) {
    d.accepted = true;
    d.evicted = victim;
    d.evicted_weight = wv;
  }
  return d;
}

Decision propose_best_singleton(const OnlineState& st, ElementId u) {
  const Objective& f = st.objective();
  Decision d;
  d.element = u;
  const ElementId single[] = {u};
  d.weight = f.value(single);
  if (st.feasible().empty()) {
    d.threshold = f.empty_value();
  } else {
    d.threshold = f.value(st.feasible());
  }
  if (d.weight > d.threshold) {
    d.accepted = true;
    if (!st.feasible().empty()) {
      d.evicted = st.feasible().front();
      d.evicted_weight = d.threshold;
    }
  }
  return d;
}

void commit(OnlineState& st, const Decision& d) {
  if (d.accepted) st.accept(d.element, d.evicted);
}

Decision step_k_uniform(OnlineState& st, ElementId u, double alpha) {
  Decision d = propose_k_uniform(st, u, alpha);
  commit(st, d);
  return d;
}

Decision step_general_matroid(OnlineState& st, ElementId u, double c) {
  Decision d = propose_general_matroid(st, u, c);
  commit(st, d);
  return d;
}

Decision best_singleton_step(OnlineState& st, ElementId u) {
  Decision d = propose_best_singleton(st, u);
  commit(st, d);
  return d;
}

KUniformAlgorithm::KUniformAlgorithm(const Objective& f, const Matroid& m, std::optional<double> alpha)
    : OnlineAlgorithm(f), st_(f, m), alpha_(0.0) {
  if (!m.is_uniform()) throw AlgorithmError("the threshold rule needs a uniform matroid");
  if (!f.is_monotone()) throw AlgorithmError("the threshold rule needs a monotone objective");
  alpha_ = alpha ? *alpha : solve_alpha(m.as_uniform().k, 1).value;
}

GeneralMatroidAlgorithm::GeneralMatroidAlgorithm(const Objective& f, const Matroid& m, double c)
    : OnlineAlgorithm(f), st_(f, m), c_(c) {
  if (!(c > 1.0)) throw AlgorithmError("the swap constant must exceed 1");
  if (!f.is_monotone()) throw AlgorithmError("the exchange rule needs a monotone objective");
}

BestSingletonAlgorithm::BestSingletonAlgorithm(const Objective& f, const Matroid& m, int k)
    : OnlineAlgorithm(f), st_(f, m), k_(k) {}

std::unique_ptr<OnlineAlgorithm> make_uniform_dispatch(const Objective& f, const Matroid& m) {
  const int k = m.as_uniform().k;
  if (k <= 3) return std::make_unique<BestSingletonAlgorithm>(f, m, k);
  return std::make_unique<KUniformAlgorithm>(f, m);
}

}  // namespace subfree
