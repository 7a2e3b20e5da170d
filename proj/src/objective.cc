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

#include "subfree/objective.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "subfree/kernels.h"

namespace subfree {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::size_t kMaxSubsetTable = 20;

template <class T>
void put(std::vector<std::optional<T>>& v, ElementId e, T value) {
  if (e >= v.size()) v.resize(e + 1);
  v[e] = std::move(value);
}

template <class T>
bool has(const std::vector<std::optional<T>>& v, ElementId e) {
  return e < v.size() && v[e].has_value();
}

std::vector<Interval> normalize(std::vector<Interval> in) {
  for (const auto& iv : in) {
    if (iv.lo < Rational(0)) throw ObjectiveError("interval starts below zero");
    if (!(iv.lo < iv.hi)) throw ObjectiveError("interval [" + iv.lo.to_string() + "," + iv.hi.to_string() + ") is empty");
  }
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& iv : in) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

double table_tolerance(const std::vector<double>& value) {
  double scale = 1.0;
  for (double v : value) scale = std::max(scale, std::abs(v));
  return 1e-9 * scale;
}

}  // namespace

double IntervalCoverage::cell_weight(std::int64_t cell) const {
  return std::exp(-static_cast<double>(cell + 1) * std::log1p(-epsilon));
}

double IntervalCoverage::weighted_length(const Rational& lo, const Rational& hi) const {
  double total = 0.0;
  for (std::int64_t c = lo.floor(); c < hi.ceil(); ++c) {
    const Rational a = std::max(lo, Rational(c));
    const Rational b = std::min(hi, Rational(c + 1));
    if (a < b) total += (b - a).to_double() * cell_weight(c);
  }
  return 2.0 * total;
}

int ExplicitTable::local_index(ElementId e) const {
  auto it = std::find(ground.begin(), ground.end(), e);
  if (it == ground.end()) throw UnknownElementError("element " + std::to_string(e) + " is outside the table ground");
  return static_cast<int>(it - ground.begin());
}

std::uint32_t ExplicitTable::mask_of(std::span<const ElementId> s) const {
  std::uint32_t mask = 0;
  for (ElementId e : s) mask |= std::uint32_t{1} << local_index(e);
  return mask;
}

Objective Objective::linear(const std::map<ElementId, double>& weight) {
  LinearObjective lin;
  for (const auto& [e, w] : weight) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ObjectiveError("linear weights must be finite and non-negative");
    put(lin.weight, e, w);
  }
  return Objective(std::move(lin));
}

Objective Objective::weighted_coverage(std::vector<std::string> item_names, std::vector<double> item_weight,
                                       const std::map<ElementId, std::vector<std::uint32_t>>& covers) {
  if (item_names.size() != item_weight.size()) throw ObjectiveError("item names and weights disagree");
  for (double w : item_weight) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ObjectiveError("item weights must be finite and non-negative");
  }
  WeightedCoverage cov;
  cov.item_names = std::move(item_names);
  cov.item_weight = std::move(item_weight);
  Objective f(std::move(cov));
  for (const auto& [e, items] : covers) f.add_coverage_element(e, items);
  return f;
}

Objective Objective::interval_coverage(double epsilon, const std::map<ElementId, std::vector<Interval>>& covers) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ObjectiveError("epsilon must lie in (0,1)");
  IntervalCoverage ic;
  ic.epsilon = epsilon;
  Objective f(std::move(ic));
  for (const auto& [e, ivs] : covers) f.add_interval_element(e, ivs);
  return f;
}

Objective Objective::explicit_table(std::vector<ElementId> ground, std::vector<double> value) {
  const std::size_t n = ground.size();
  if (n > kMaxExactSupport) throw ObjectiveError("explicit table ground exceeds " + std::to_string(kMaxExactSupport));
  {
    auto sorted = ground;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ObjectiveError("explicit table ground has duplicates");
    }
  }
  if (value.size() != (std::size_t{1} << n)) throw ObjectiveError("explicit table must list every subset");
  for (double v : value) {
    if (!std::isfinite(v) || v < 0.0) throw ObjectiveError("explicit table values must be finite and non-negative");
  }
  const double tol = table_tolerance(value);
  bool monotone = true;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t s = 0; s <= full; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bi = std::uint32_t{1} << i;
      if (s & bi) continue;
      if (value[s | bi] < value[s] - tol) monotone = false;
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint32_t bj = std::uint32_t{1} << j;
        if (s & bj) continue;
        if (value[s | bi] + value[s | bj] < value[s | bi | bj] + value[s] - tol) {
          throw ObjectiveError("explicit table is not submodular at mask " + std::to_string(s));
        }
      }
    }
  }
  return Objective(ExplicitTable{std::move(ground), std::move(value), monotone});
}

std::string Objective::kind() const {
  return std::visit(Overloaded{[](const LinearObjective&) { return std::string("linear"); },
                               [](const WeightedCoverage&) { return std::string("weighted_coverage"); },
                               [](const IntervalCoverage&) { return std::string("interval_coverage"); },
                               [](const ExplicitTable&) { return std::string("explicit_table"); }},
                    variant_);
}

bool Objective::is_monotone() const {
  if (const auto* t = std::get_if<ExplicitTable>(&variant_)) return t->monotone;
  return true;
}

bool Objective::knows(ElementId e) const {
  return std::visit(Overloaded{[&](const LinearObjective& o) { return has(o.weight, e); },
                               [&](const WeightedCoverage& o) { return has(o.covers, e); },
                               [&](const IntervalCoverage& o) { return has(o.covers, e); },
                               [&](const ExplicitTable& o) {
                                 return std::find(o.ground.begin(), o.ground.end(), e) != o.ground.end();
                               }},
                    variant_);
}

ElementSet Objective::elements() const {
  ElementSet out;
  auto collect = [&](const auto& v) {
    for (std::size_t e = 0; e < v.size(); ++e) {
      if (v[e].has_value()) out.push_back(static_cast<ElementId>(e));
    }
  };
  std::visit(Overloaded{[&](const LinearObjective& o) { collect(o.weight); },
                        [&](const WeightedCoverage& o) { collect(o.covers); },
                        [&](const IntervalCoverage& o) { collect(o.covers); },
                        [&](const ExplicitTable& o) { out = make_set(o.ground); }},
             variant_);
  return out;
}

std::uint32_t Objective::add_item(const std::string& name, double weight) {
  auto* cov = std::get_if<WeightedCoverage>(&variant_);
  if (cov == nullptr) throw ObjectiveError("add_item needs a weighted coverage objective");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw ObjectiveError("item weights must be finite and non-negative");
  cov->item_names.push_back(name);
  cov->item_weight.push_back(weight);
  return static_cast<std::uint32_t>(cov->item_weight.size() - 1);
}

void Objective::add_coverage_element(ElementId e, std::vector<std::uint32_t> items) {
  auto* cov = std::get_if<WeightedCoverage>(&variant_);
  if (cov == nullptr) throw ObjectiveError("add_coverage_element needs a weighted coverage objective");
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  for (std::uint32_t x : items) {
    if (x >= cov->item_weight.size()) throw ObjectiveError("cover references an unknown item");
  }
  put(cov->covers, e, std::move(items));
}

void Objective::add_interval_element(ElementId e, std::vector<Interval> intervals) {
  auto* ic = std::get_if<IntervalCoverage>(&variant_);
  if (ic == nullptr) throw ObjectiveError("add_interval_element needs an interval coverage objective");
  put(ic->covers, e, normalize(std::move(intervals)));
}

void Objective::check_known(ElementId e) const {
  if (!knows(e)) throw UnknownElementError("element " + std::to_string(e) + " is unknown to the objective");
}

double Objective::empty_value() const {
  if (const auto* t = std::get_if<ExplicitTable>(&variant_)) return t->value[0];
  return 0.0;
}

double Objective::value(std::span<const ElementId> s) const {
  if (const auto* t = std::get_if<ExplicitTable>(&variant_)) return t->value[t->mask_of(s)];
  ValueAccumulator acc(*this);
  for (ElementId e : s) acc.add(e);
  return acc.value();
}

double Objective::marginal(ElementId u, std::span<const ElementId> s) const {
  check_known(u);
  if (const auto* t = std::get_if<ExplicitTable>(&variant_)) {
    const std::uint32_t mask = t->mask_of(s);
    const std::uint32_t bit = std::uint32_t{1} << t->local_index(u);
    return t->value[mask | bit] - t->value[mask];
  }
  ValueAccumulator acc(*this);
  for (ElementId e : s) acc.add(e);
  return acc.gain(u);
}

bool Objective::interacts(ElementId u, ElementId v) const {
  return std::visit(
      Overloaded{
          [](const LinearObjective&) { return false; },
          [&](const WeightedCoverage& o) {
            if (!has(o.covers, u) || !has(o.covers, v)) return true;
            const auto& a = *o.covers[u];
            const auto& b = *o.covers[v];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
              if (a[i] == b[j]) return true;
              if (a[i] < b[j]) ++i; else ++j;
            }
            return false;
          },
          [&](const IntervalCoverage& o) {
            if (!has(o.covers, u) || !has(o.covers, v)) return true;
            for (const auto& x : *o.covers[u]) {
              for (const auto& y : *o.covers[v]) {
                if (x.lo < y.hi && y.lo < x.hi) return true;
              }
            }
            return false;
          },
          [](const ExplicitTable&) { return true; },
      },
      variant_);
}

ValueAccumulator::ValueAccumulator(const Objective& f) : f_(&f), value_(f.empty_value()) {}

void ValueAccumulator::clear() {
  value_ = f_->empty_value();
  present_.clear();
  item_count_.clear();
  covered_.clear();
  mask_ = 0;
}

double ValueAccumulator::gain(ElementId u) const {
  if (!f_->knows(u)) throw UnknownElementError("element " + std::to_string(u) + " is unknown to the objective");
  if (contains(u)) return 0.0;
  return std::visit(
      Overloaded{
          [&](const LinearObjective& o) { return *o.weight[u]; },
          [&](const WeightedCoverage& o) {
            double g = 0.0;
            for (std::uint32_t x : *o.covers[u]) {
              if (x >= item_count_.size() || item_count_[x] == 0) g += o.item_weight[x];
            }
            return g;
          },
          [&](const IntervalCoverage& o) {
            double g = 0.0;
            for (const auto& iv : *o.covers[u]) {
              Rational cursor = iv.lo;
              auto it = covered_.upper_bound(iv.lo);
              if (it != covered_.begin()) {
                auto prev = std::prev(it);
                if (prev->second > cursor) cursor = prev->second;
              }
              for (; it != covered_.end() && it->first < iv.hi && cursor < iv.hi; ++it) {
                if (cursor < it->first) g += o.weighted_length(cursor, it->first);
                cursor = std::max(cursor, it->second);
              }
              if (cursor < iv.hi) g += o.weighted_length(cursor, iv.hi);
            }
            return g;
          },
          [&](const ExplicitTable& o) {
            const std::uint32_t bit = std::uint32_t{1} << o.local_index(u);
            return o.value[mask_ | bit] - o.value[mask_];
          },
      },
      f_->variant());
}

void ValueAccumulator::add(ElementId u) {
  if (contains(u)) return;
  const double g = gain(u);
  std::visit(Overloaded{
                 [](const LinearObjective&) {},
                 [&](const WeightedCoverage& o) {
                   if (item_count_.size() < o.item_weight.size()) item_count_.resize(o.item_weight.size(), 0);
                   for (std::uint32_t x : *o.covers[u]) ++item_count_[x];
                 },
                 [&](const IntervalCoverage& o) {
                   for (const auto& iv : *o.covers[u]) {
                     Rational lo = iv.lo;
                     Rational hi = iv.hi;
                     auto it = covered_.upper_bound(lo);
                     if (it != covered_.begin() && std::prev(it)->second >= lo) --it;
                     while (it != covered_.end() && it->first <= hi) {
                       lo = std::min(lo, it->first);
                       hi = std::max(hi, it->second);
                       it = covered_.erase(it);
                     }
                     covered_.emplace(lo, hi);
                   }
                 },
                 [&](const ExplicitTable& o) { mask_ |= std::uint32_t{1} << o.local_index(u); },
             },
             f_->variant());
  if (u >= present_.size()) present_.resize(u + 1, 0);
  present_[u] = 1;
  if (const auto* t = std::get_if<ExplicitTable>(&f_->variant())) {
    value_ = t->value[mask_];
  } else {
    value_ += g;
  }
}

std::vector<double> subset_values(const Objective& f, std::span<const ElementId> ground) {
  const std::size_t n = ground.size();
  if (n > kMaxSubsetTable) throw ObjectiveError("subset table over more than 20 elements");
  std::vector<double> out(std::size_t{1} << n);
  if (const auto* t = std::get_if<ExplicitTable>(&f.variant())) {
    std::vector<std::uint32_t> local(n);
    for (std::size_t i = 0; i < n; ++i) local[i] = std::uint32_t{1} << t->local_index(ground[i]);
    std::vector<std::uint32_t> translated(out.size(), 0);
    for (std::size_t m = 1; m < out.size(); ++m) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(m));
      translated[m] = translated[m & (m - 1)] | local[low];
    }
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = t->value[translated[m]];
    return out;
  }
  auto rec = [&](auto&& self, std::size_t start, const ValueAccumulator& acc, std::size_t mask) -> void {
    out[mask] = acc.value();
    for (std::size_t i = start; i < n; ++i) {
      ValueAccumulator next = acc;
      next.add(ground[i]);
      self(self, i + 1, next, mask | (std::size_t{1} << i));
    }
  };
  rec(rec, 0, ValueAccumulator(f), 0);
  return out;
}

namespace {

std::vector<ElementId> support_of(const FractionalVector& s) {
  std::vector<ElementId> out;
  for (const auto& [e, m] : s) {
    if (!(m >= 0.0)) throw ObjectiveError("fractional masses must be non-negative");
    if (m > 0.0) out.push_back(e);
  }
  return out;
}

void check_exact_size(std::size_t n) {
  if (n > kMaxExactSupport) {
    throw ObjectiveError("exact evaluation over " + std::to_string(n) + " elements exceeds " +
                         std::to_string(kMaxExactSupport));
  }
}

double exact_expectation(const Objective& f, std::span<const ElementId> ground, std::span<const double> probs) {
  check_exact_size(ground.size());
  std::vector<double> weights(std::size_t{1} << ground.size());
  kernels::expand_product_weights(probs, weights);
  const std::vector<double> values = subset_values(f, ground);
  return kernels::dot(weights, values);
}

template <class Draw>
Estimate monte_carlo(int samples, std::uint64_t seed, Draw draw) {
  if (samples < 1) throw ObjectiveError("monte carlo needs at least one sample");
  std::mt19937_64 rng(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = draw(rng);
    const double delta = x - mean;
    mean += delta / (i + 1);
    m2 += delta * (x - mean);
  }
  const double var = samples > 1 ? m2 / (samples - 1) : 0.0;
  return {mean, std::sqrt(var / samples)};
}

}  // namespace

double soft_value(const Objective& f, const FractionalVector& s, EvalMode mode) {
  if (mode.kind == EvalMode::Kind::kMonteCarlo) return soft_value_mc(f, s, mode.samples, mode.seed).mean;
  const auto support = support_of(s);
  std::vector<double> probs;
  for (ElementId e : support) probs.push_back(-std::expm1(-s.at(e)));
  return exact_expectation(f, support, probs);
}

Estimate soft_value_mc(const Objective& f, const FractionalVector& s, int samples, std::uint64_t seed) {
  const auto support = support_of(s);
  std::vector<double> probs;
  for (ElementId e : support) probs.push_back(-std::expm1(-s.at(e)));
  std::vector<ElementId> pick;
  return monte_carlo(samples, seed, [&](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    pick.clear();
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (unit(rng) < probs[i]) pick.push_back(support[i]);
    }
    return f.value(pick);
  });
}

double soft_marginal_rate(const Objective& f, ElementId u, const FractionalVector& s, EvalMode mode) {
  if (!f.knows(u)) throw UnknownElementError("element " + std::to_string(u) + " is unknown to the objective");
  auto it = s.find(u);
  const double own = it == s.end() ? 0.0 : it->second;
  std::vector<ElementId> others;
  std::vector<double> probs;
  for (ElementId e : support_of(s)) {
    if (e == u) continue;
    others.push_back(e);
    probs.push_back(-std::expm1(-s.at(e)));
  }
  const double damping = std::exp(-own);
  if (mode.kind == EvalMode::Kind::kMonteCarlo) {
    std::vector<ElementId> pick;
    const Estimate est = monte_carlo(mode.samples, mode.seed, [&](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      pick.clear();
      for (std::size_t i = 0; i < others.size(); ++i) {
        if (unit(rng) < probs[i]) pick.push_back(others[i]);
      }
      return f.marginal(u, pick);
    });
    return damping * est.mean;
  }
  check_exact_size(others.size() + 1);
  std::vector<double> weights(std::size_t{1} << others.size());
  kernels::expand_product_weights(probs, weights);
  std::vector<ElementId> ground = others;
  ground.push_back(u);
  const std::vector<double> values = subset_values(f, ground);
  const std::size_t half = weights.size();
  const std::span<const double> lo(values.data(), half);
  const std::span<const double> hi(values.data() + half, half);
  return damping * kernels::dot_diff(weights, hi, lo);
}

double sampled_value_p(const Objective& f, std::span<const ElementId> s, double p, EvalMode mode) {
  if (!(p >= 0.0 && p <= 1.0)) throw ObjectiveError("sampling probability must lie in [0,1]");
  if (mode.kind == EvalMode::Kind::kMonteCarlo) return sampled_value_mc(f, s, p, mode.samples, mode.seed).mean;
  const std::vector<double> probs(s.size(), p);
  return exact_expectation(f, s, probs);
}

Estimate sampled_value_mc(const Objective& f, std::span<const ElementId> s, double p, int samples,
                          std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ObjectiveError("sampling probability must lie in [0,1]");
  std::vector<ElementId> pick;
  return monte_carlo(samples, seed, [&](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    pick.clear();
    for (ElementId e : s) {
      if (unit(rng) < p) pick.push_back(e);
    }
    return f.value(pick);
  });
}

Objective sampled_extension_table(const Objective& f, std::span<const ElementId> ground, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ObjectiveError("sampling probability must lie in [0,1]");
  check_exact_size(ground.size());
  std::vector<double> values = subset_values(f, ground);
  for (std::size_t i = 0; i < ground.size(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t m = 0; m < values.size(); ++m) {
      if (m & bit) values[m] = (1.0 - p) * values[m ^ bit] + p * values[m];
    }
  }
  return Objective::explicit_table(std::vector<ElementId>(ground.begin(), ground.end()), std::move(values));
}

}  // namespace subfree
