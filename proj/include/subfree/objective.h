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

#ifndef SUBFREE_OBJECTIVE_H_
#define SUBFREE_OBJECTIVE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "subfree/element.h"
#include "subfree/rational.h"

namespace subfree {

class ObjectiveError : public std::invalid_argument {
 public:
  explicit ObjectiveError(const std::string& what) : std::invalid_argument(what) {}
};

// Largest ground an ExplicitTable or an exact extension may span.
inline constexpr std::size_t kMaxExactSupport = 15;

struct LinearObjective {
  std::vector<std::optional<double>> weight;
};

struct WeightedCoverage {
  std::vector<double> item_weight;
  std::vector<std::string> item_names;
  std::vector<std::optional<std::vector<std::uint32_t>>> covers;
};

struct Interval {
  Rational lo;
  Rational hi;
};

// f(S) = 2 * integral of phi over the union of the intervals of S, where phi
// equals (1 - epsilon)^-(i+1) on the cell [i, i+1).
struct IntervalCoverage {
  double epsilon = 0.5;
  // Each element's own intervals, merged and sorted.
  std::vector<std::optional<std::vector<Interval>>> covers;

  double cell_weight(std::int64_t cell) const;
  // 2 * integral of phi over [lo, hi).
  double weighted_length(const Rational& lo, const Rational& hi) const;
};

// value[mask] for masks over the local positions of `ground`.
struct ExplicitTable {
  std::vector<ElementId> ground;
  std::vector<double> value;
  bool monotone = true;

  int local_index(ElementId e) const;
  std::uint32_t mask_of(std::span<const ElementId> s) const;
};

class Objective {
 public:
  using Variant = std::variant<LinearObjective, WeightedCoverage, IntervalCoverage, ExplicitTable>;

  static Objective linear(const std::map<ElementId, double>& weight);
  static Objective weighted_coverage(std::vector<std::string> item_names, std::vector<double> item_weight,
                                     const std::map<ElementId, std::vector<std::uint32_t>>& covers);
  static Objective interval_coverage(double epsilon, const std::map<ElementId, std::vector<Interval>>& covers);
  // Validates non-negativity and submodularity exhaustively and records
  // whether the table is monotone.
  static Objective explicit_table(std::vector<ElementId> ground, std::vector<double> value);

  const Variant& variant() const { return variant_; }
  std::string kind() const;
  bool is_monotone() const;
  bool knows(ElementId e) const;
  // Every element the objective defines, in increasing id order.
  ElementSet elements() const;

  // Growth hooks for drivers that create elements on the fly.
  std::uint32_t add_item(const std::string& name, double weight);
  void add_coverage_element(ElementId e, std::vector<std::uint32_t> items);
  void add_interval_element(ElementId e, std::vector<Interval> intervals);

  double value(std::span<const ElementId> s) const;
  double marginal(ElementId u, std::span<const ElementId> s) const;
  double empty_value() const;

  // False only when f(u | X + v) = f(u | X) holds for every X.
  bool interacts(ElementId u, ElementId v) const;

 private:
  explicit Objective(Variant v) : variant_(std::move(v)) {}
  void check_known(ElementId e) const;

  Variant variant_;
};

// Incremental evaluation of f over a growing set.
class ValueAccumulator {
 public:
  explicit ValueAccumulator(const Objective& f);

  double value() const { return value_; }
  // f(u | current); zero when u is already present.
  double gain(ElementId u) const;
  void add(ElementId u);
  void clear();
  bool contains(ElementId u) const { return u < present_.size() && present_[u] != 0; }

 private:
  const Objective* f_;
  double value_ = 0.0;
  std::vector<std::uint8_t> present_;
  // Linear: unused. Coverage: per-item counts. Interval: merged cover.
  std::vector<int> item_count_;
  std::map<Rational, Rational> covered_;
  std::uint32_t mask_ = 0;
};

struct EvalMode {
  enum class Kind { kExact, kMonteCarlo };
  Kind kind = Kind::kExact;
  int samples = 10000;
  std::uint64_t seed = 0;

  static EvalMode exact() { return {}; }
  static EvalMode monte_carlo(int samples = 10000, std::uint64_t seed = 0) {
    return {Kind::kMonteCarlo, samples, seed};
  }
};

// Absent elements carry mass 0.
using FractionalVector = std::map<ElementId, double>;

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// f(T) for every T over the positions of `ground` (|ground| <= 20).
std::vector<double> subset_values(const Objective& f, std::span<const ElementId> ground);

// E f(R(s)) where R keeps u with probability 1 - exp(-s_u).
double soft_value(const Objective& f, const FractionalVector& s, EvalMode mode = EvalMode::exact());
Estimate soft_value_mc(const Objective& f, const FractionalVector& s, int samples, std::uint64_t seed);

// exp(-s_u) * E f(u | R(s without u)); the partial derivative of soft_value in u.
double soft_marginal_rate(const Objective& f, ElementId u, const FractionalVector& s,
                          EvalMode mode = EvalMode::exact());

// E f(I_p(s)) where I_p keeps each element independently with probability p.
double sampled_value_p(const Objective& f, std::span<const ElementId> s, double p,
                       EvalMode mode = EvalMode::exact());
Estimate sampled_value_mc(const Objective& f, std::span<const ElementId> s, double p, int samples,
                          std::uint64_t seed);

// ExplicitTable holding T -> E f(I_p(T)) for every T over `ground`.
Objective sampled_extension_table(const Objective& f, std::span<const ElementId> ground, double p);

}  // namespace subfree

#endif  // SUBFREE_OBJECTIVE_H_
