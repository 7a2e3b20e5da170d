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

#include "subfree/nonmonotone.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace subfree {
namespace {

// Minimum stored w over `candidates`, earliest accepted on ties.
std::optional<ElementId> argmin_stored(const OnlineState& st, std::span<const ElementId> candidates) {
  std::vector<ElementId> ordered(candidates.begin(), candidates.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](ElementId a, ElementId b) { return st.acceptance_index(a) < st.acceptance_index(b); });
  std::optional<ElementId> best;
  double best_w = 0.0;
  for (ElementId v : ordered) {
    const double w = st.stored_w(v);
    if (!best || w < best_w) {
      best = v;
      best_w = w;
    }
  }
  return best;
}

std::unique_ptr<Objective> surrogate_of(const Objective& f, double p) {
  const ElementSet ground = f.elements();
  return std::make_unique<Objective>(sampled_extension_table(f, ground, p));
}

}  // namespace

Decision propose_nonmono_general(const OnlineState& st, ElementId u, double c) {
  if (!(c > 1.0)) throw AlgorithmError("the swap constant must exceed 1");
  Decision d;
  d.element = u;
  d.weight = st.w_arrival(u);
  if (!(d.weight > 0.0)) return d;
  if (st.matroid().is_independent(set_insert(st.feasible(), u))) {
    d.accepted = true;
    return d;
  }
  const ElementSet t = st.matroid().exchange_set(st.feasible(), u);
  const auto victim = argmin_stored(st, t);
  if (!victim) return d;
  const double wv = st.stored_w(*victim);
  d.threshold = c * wv;
  if (d.weight >= d.threshold) {
    d.accepted = true;
    d.evicted = victim;
    d.evicted_weight = wv;
  }
  return d;
}

Decision step_nonmono_general(OnlineState& st, ElementSet& hat, ElementId u, const CoinSource& coin, double c) {
  Decision d = propose_nonmono_general(st, u, c);
  if (!d.accepted) return d;
  commit(st, d);
  if (d.evicted) hat = set_erase(std::move(hat), *d.evicted);
  if (coin()) hat = set_insert(std::move(hat), u);
  return d;
}

NonmonoGeneralAlgorithm::NonmonoGeneralAlgorithm(const Objective& f, const Matroid& m, CoinSource coin, double c)
    : OnlineAlgorithm(f), g_(surrogate_of(f, 0.5)), st_(*g_, m), coin_(std::move(coin)), c_(c) {}

Decision NonmonoGeneralAlgorithm::process(ElementId u) { return step_nonmono_general(st_, hat_, u, coin_, c_); }

double NonmonoGeneralAlgorithm::certified_value() const { return g_->value(st_.feasible()); }

std::vector<int> slots_from_choices(const std::vector<int>& choices, int rho) {
  std::vector<int> out;
  out.reserve(choices.size());
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (choices[i] < 0 || choices[i] >= rho) throw AlgorithmError("slot choice outside [0, rho)");
    out.push_back(static_cast<int>(i) * rho + choices[i]);
  }
  return out;
}

std::vector<int> sample_slot_choices(int k, int rho, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, rho - 1);
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int& c : out) c = pick(rng);
  return out;
}

NonmonoUniformAlgorithm::NonmonoUniformAlgorithm(const Objective& f, int k, std::vector<int> choices)
    : OnlineAlgorithm(f),
      k_(k),
      alpha_(solve_alpha(k, kRho)),
      g_(surrogate_of(f, 1.0 / kRho)),
      capacity_(std::make_unique<Matroid>(Matroid::uniform(kRho * k))),
      st_(*g_, *capacity_),
      choices_(std::move(choices)),
      slots_(static_cast<std::size_t>(kRho * k)) {
  if (static_cast<int>(choices_.size()) != k) throw AlgorithmError("need one slot choice per block");
  (void)slots_from_choices(choices_, kRho);
}

NonmonoUniformAlgorithm::NonmonoUniformAlgorithm(const Objective& f, int k, std::uint64_t seed)
    : NonmonoUniformAlgorithm(f, k, sample_slot_choices(k, kRho, seed)) {}

Decision NonmonoUniformAlgorithm::process(ElementId u) {
  Decision d;
  d.element = u;
  d.weight = st_.w_arrival(u);
  d.threshold = (alpha_.value * st_.feasible_weight() - kRho * st_.history_weight()) / (kRho * k_);
  if (!(d.weight > d.threshold)) return d;
  d.accepted = true;
  std::size_t slot = slots_.size();
  if (static_cast<int>(st_.feasible().size()) >= kRho * k_) {
    d.evicted = argmin_stored(st_, st_.feasible_order());
    d.evicted_weight = st_.stored_w(*d.evicted);
    slot = static_cast<std::size_t>(std::find(slots_.begin(), slots_.end(), d.evicted) - slots_.begin());
  } else {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (!slots_[i]) {
        slot = i;
        break;
      }
    }
  }
  commit(st_, d);
  slots_[slot] = u;
  return d;
}

ElementSet NonmonoUniformAlgorithm::solution_for(const std::vector<int>& choices) const {
  ElementSet out;
  for (int j : slots_from_choices(choices, kRho)) {
    if (slots_[static_cast<std::size_t>(j)]) out.push_back(*slots_[static_cast<std::size_t>(j)]);
  }
  return make_set(std::move(out));
}

double NonmonoUniformAlgorithm::certified_value() const {
  const double count = std::pow(static_cast<double>(kRho), k_);
  if (count > 1e5) return std::numeric_limits<double>::quiet_NaN();
  std::vector<int> choices(static_cast<std::size_t>(k_), 0);
  double total = 0.0;
  for (;;) {
    total += objective().value(solution_for(choices));
    std::size_t i = 0;
    while (i < choices.size() && ++choices[i] == kRho) choices[i++] = 0;
    if (i == choices.size()) break;
  }
  return total / count;
}

}  // namespace subfree
