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

#include "subfree/adversaries.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "subfree/alpha.h"

namespace subfree {
namespace {

// Neumaier-compensated running sum in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

std::string part_label(int part) { return std::to_string(part); }

// Intervals of phase i and the union of the kept ones, over the weighted
// measure 2 * phi with phi = (1 - eps)^{-i} on [i - 1, i).
class UniformHardnessDriver : public AdversaryDriver {
 public:
  explicit UniformHardnessDriver(const AdversaryParams& p) : AdversaryDriver(p) {
    if (p.k < 1) throw AdversaryError("k must be positive");
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw AdversaryError("epsilon must lie in (0,1)");
    if (!(p.delta > 0.0 && p.delta < 1.0)) throw AdversaryError("delta must lie in (0,1)");
    objective_ = std::make_unique<Objective>(Objective::interval_coverage(p.epsilon, {}));
    matroid_ = std::make_unique<Matroid>(Matroid::uniform(p.k));
    total_phases_ = p.phases ? *p.phases : static_cast<int>(std::floor(p.delta * p.k));
  }

  double opt_value() const override {
    // Per phase, the first slot is worth the union (|B_i| intervals) and every
    // further slot one more interval; the marginal sequence is nonincreasing,
    // so the greedy top-k over all phases is optimal.
    std::vector<std::pair<double, long long>> groups;
    for (const Phase& ph : phases_) {
      if (ph.kept > 0) {
        groups.emplace_back(ph.kept * ph.unit, 1);
        groups.emplace_back(ph.unit, ph.arrived - ph.kept);
      } else {
        groups.emplace_back(ph.unit, ph.arrived);
      }
    }
    std::stable_sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    long long slots = params_.k;
    CompensatedSum total;
    for (const auto& [value, count] : groups) {
      if (slots == 0) break;
      const long long take = std::min(slots, count);
      total.add(static_cast<long double>(value) * take);
      slots -= take;
    }
    return static_cast<double>(total.value());
  }

  std::optional<std::string> audit(std::span<const ElementId> visible) const override {
    if (last_union_ && set_contains(visible, *last_union_)) {
      return "phase " + std::to_string(phase_) + ": union element was accepted";
    }
    return std::nullopt;
  }

 protected:
  std::optional<ElementId> emit(std::span<const ElementId> visible) override {
    last_union_.reset();
    const int two_k = 2 * params_.k;
    if (phase_ == 0 || union_done_) {
      if (phase_ >= total_phases_) {
        stop("phase bound reached");
        return std::nullopt;
      }
      ++phase_;
      union_done_ = false;
      current_.clear();
      const double unit = std::get<IntervalCoverage>(objective_->variant()).cell_weight(phase_ - 1) / params_.k;
      phases_.push_back(Phase{unit, 0, 0});
    }
    Phase& ph = phases_.back();
    if (ph.arrived < two_k) {
      const int j = ph.arrived + 1;
      const Rational base(phase_ - 1);
      const Interval iv{base + Rational(j - 1, two_k), base + Rational(j, two_k)};
      const ElementId e = ground_.intern("I" + std::to_string(phase_) + "." + std::to_string(j));
      objective_->add_interval_element(e, {iv});
      ++ph.arrived;
      current_.push_back(e);
      return announce(e);
    }
    // Step (b): the union of this phase's intervals still held.
    union_done_ = true;
    std::vector<Interval> kept;
    for (ElementId e : current_) {
      if (set_contains(visible, e)) {
        const auto& cover = *std::get<IntervalCoverage>(objective_->variant()).covers[e];
        kept.insert(kept.end(), cover.begin(), cover.end());
      }
    }
    if (kept.empty()) return emit(visible);
    ph.kept = static_cast<int>(kept.size());
    const ElementId u = ground_.intern("U" + std::to_string(phase_));
    objective_->add_interval_element(u, kept);
    last_union_ = u;
    return announce(u);
  }

 private:
  struct Phase {
    double unit = 0.0;
    int arrived = 0;
    int kept = 0;
  };
  int total_phases_ = 0;
  bool union_done_ = false;
  std::vector<Phase> phases_;
  std::vector<ElementId> current_;
  std::optional<ElementId> last_union_;
};

// Phase i emits (x_i, 0) and then (x_i, i), both covering the item x_i of
// value a_i, with capacity one per part.
class PartitionMonotoneDriver : public AdversaryDriver {
 public:
  explicit PartitionMonotoneDriver(const AdversaryParams& p) : AdversaryDriver(p) {
    weights_ = monotone_weights(p.alpha, p.max_phases + 1);
    objective_ = std::make_unique<Objective>(Objective::weighted_coverage({}, {}, {}));
    matroid_ = std::make_unique<Matroid>(Matroid::partition({}, {}, {}));
  }

  double opt_value() const override {
    // Every arrived item is covered: x_j by (x_j, j) for finished phases and
    // the newest by (x_i, 0).
    CompensatedSum total;
    for (double v : item_values_) total.add(v);
    return static_cast<double>(total.value());
  }

 protected:
  std::optional<ElementId> emit(std::span<const ElementId> visible) override {
    if (!second_) {
      const std::size_t next = static_cast<std::size_t>(phase_);
      if (next >= weights_.size() || weights_[next] < 0.0L) {
        stop(next >= weights_.size() ? "phase bound reached" : "next weight is negative");
        return std::nullopt;
      }
      ++phase_;
      const double a = static_cast<double>(weights_[next]);
      const std::uint32_t item = objective_->add_item("x" + std::to_string(phase_), a);
      item_values_.push_back(a);
      first_ = ground_.intern("x" + std::to_string(phase_) + "@0");
      objective_->add_coverage_element(first_, {item});
      matroid_->add_to_part(first_, part_label(0), 1);
      item_ = item;
      second_ = true;
      return announce(first_);
    }
    if (!set_contains(visible, first_)) {
      stop("algorithm declined (x_" + std::to_string(phase_) + ", 0)");
      return std::nullopt;
    }
    second_ = false;
    const ElementId e = ground_.intern("x" + std::to_string(phase_) + "@" + std::to_string(phase_));
    objective_->add_coverage_element(e, {item_});
    matroid_->add_to_part(e, part_label(phase_), 1);
    return announce(e);
  }

 private:
  std::vector<long double> weights_;
  std::vector<double> item_values_;
  ElementId first_ = 0;
  std::uint32_t item_ = 0;
  bool second_ = false;
};

// Phase i: step (a) two part-0 copies of value a_i, step (b) the singleton
// y_i (value b_i) and the kept pair item in part 2i-1, step (c) the odd-part
// occupant again in part 2i.
class PartitionGeneralDriver : public AdversaryDriver {
 public:
  explicit PartitionGeneralDriver(const AdversaryParams& p) : AdversaryDriver(p) {
    weights_ = general_weights(p.alpha, p.max_phases);
    objective_ = std::make_unique<Objective>(Objective::weighted_coverage({}, {}, {}));
    matroid_ = std::make_unique<Matroid>(Matroid::partition({}, {}, {}));
  }

  double opt_value() const override {
    CompensatedSum total;
    total.add(settled_.value());
    const long double a = current_a_;
    const long double b = current_b_;
    switch (step_) {
      case 0:
        break;
      case 1:
      case 2:
        total.add(a);
        break;
      case 3:
        total.add(a + b);
        break;
      case 4:
        total.add(a + std::max(a, b));
        break;
      default:
        total.add(2 * a + b);
        break;
    }
    return static_cast<double>(total.value());
  }

 protected:
  std::optional<ElementId> emit(std::span<const ElementId> visible) override {
    switch (step_) {
      case 0:
      case 5: {
        if (step_ == 5) {
          if (!set_contains(visible, y_elem_)) {
            stop("algorithm did not keep y_" + std::to_string(phase_));
            return std::nullopt;
          }
          settled_.add(current_a_);
          settled_.add(current_b_);
        }
        const std::size_t i = static_cast<std::size_t>(phase_);
        if (i >= weights_.a.size()) {
          stop("phase bound reached");
          return std::nullopt;
        }
        ++phase_;
        current_a_ = weights_.a[i];
        current_b_ = i < weights_.b.size() ? weights_.b[i] : 0.0L;
        const std::string tag = std::to_string(phase_);
        const double a = static_cast<double>(current_a_);
        pair_items_[0] = objective_->add_item("x" + tag + "a", a);
        pair_items_[1] = objective_->add_item("x" + tag + "b", a);
        pair_elems_[0] = add_element("x" + tag + "a", pair_items_[0], 0);
        step_ = 1;
        return announce(pair_elems_[0]);
      }
      case 1: {
        pair_elems_[1] = add_element("x" + std::to_string(phase_) + "b", pair_items_[1], 0);
        step_ = 2;
        return announce(pair_elems_[1]);
      }
      case 2: {
        if (set_contains(visible, pair_elems_[0])) {
          chi_ = 0;
        } else if (set_contains(visible, pair_elems_[1])) {
          chi_ = 1;
        } else {
          stop("algorithm kept neither pair element");
          return std::nullopt;
        }
        const int odd = 2 * phase_ - 1;
        if (current_b_ <= 0.0L) {
          // OPT now counts the pair item twice; one more copy realises it.
          step_ = 4;
          finish_after_duplicate_ = true;
          return announce(add_element(pair_name(chi_), pair_items_[chi_], odd));
        }
        const std::uint32_t y = objective_->add_item("y" + std::to_string(phase_), static_cast<double>(current_b_));
        y_item_ = y;
        y_elem_ = add_element("y" + std::to_string(phase_), y, odd);
        step_ = 3;
        return announce(y_elem_);
      }
      case 3: {
        dup_elem_ = add_element(pair_name(chi_), pair_items_[chi_], 2 * phase_ - 1);
        step_ = 4;
        return announce(dup_elem_);
      }
      default: {
        if (finish_after_duplicate_) {
          stop("singleton value b_" + std::to_string(phase_) + " is nonpositive");
          return std::nullopt;
        }
        const int even = 2 * phase_;
        step_ = 5;
        if (set_contains(visible, y_elem_)) {
          return announce(add_element("y" + std::to_string(phase_), y_item_, even));
        }
        return announce(add_element(pair_name(chi_), pair_items_[chi_], even));
      }
    }
  }

 private:
  std::string pair_name(int chi) const { return "x" + std::to_string(phase_) + (chi == 0 ? "a" : "b"); }

  ElementId add_element(const std::string& item_name, std::uint32_t item, int part) {
    const ElementId e = ground_.intern(item_name + "@" + std::to_string(part));
    objective_->add_coverage_element(e, {item});
    matroid_->add_to_part(e, part_label(part), 1);
    return e;
  }

  GeneralWeights weights_;
  CompensatedSum settled_;
  long double current_a_ = 0.0L;
  long double current_b_ = 0.0L;
  // 0: new phase, 1-2: pair, 3: pair copy in the odd part, 4: even part, 5: settle.
  int step_ = 0;
  int chi_ = 0;
  bool finish_after_duplicate_ = false;
  std::uint32_t pair_items_[2] = {0, 0};
  ElementId pair_elems_[2] = {0, 0};
  std::uint32_t y_item_ = 0;
  ElementId y_elem_ = 0;
  ElementId dup_elem_ = 0;
};

}  // namespace

std::string family_name(AdversaryFamily family) {
  switch (family) {
    case AdversaryFamily::kUniform:
      return "uniform";
    case AdversaryFamily::kPartitionMonotone:
      return "partition-monotone";
    default:
      return "partition-general";
  }
}

AdversaryFamily parse_family(const std::string& name) {
  if (name == "uniform") return AdversaryFamily::kUniform;
  if (name == "partition-monotone") return AdversaryFamily::kPartitionMonotone;
  if (name == "partition-general") return AdversaryFamily::kPartitionGeneral;
  throw AdversaryError("unknown adversary family '" + name + "'");
}

std::vector<long double> monotone_weights(double alpha, int max_terms) {
  std::vector<long double> a;
  CompensatedSum sum;
  long double next = 1.0L;
  while (static_cast<int>(a.size()) < max_terms) {
    a.push_back(next);
    if (next < 0.0L) break;
    sum.add(next);
    next = static_cast<long double>(alpha) * next - sum.value();
  }
  return a;
}

GeneralWeights general_weights(double alpha, int max_terms) {
  GeneralWeights w;
  const long double al = alpha;
  CompensatedSum sum_a;
  CompensatedSum sum_b;
  long double a = 1.0L;
  while (static_cast<int>(w.a.size()) < max_terms) {
    w.a.push_back(a);
    sum_a.add(a);
    const long double b_prev = sum_b.value();
    const long double b = al * (a + b_prev) - sum_a.value() - a - b_prev;
    w.b.push_back(b);
    if (b <= 0.0L) break;
    sum_b.add(b);
    a = al * (a + sum_b.value()) - sum_a.value() - sum_b.value();
  }
  return w;
}

double general_discriminant(double alpha) {
  return (alpha * alpha + alpha + 1.0) * (alpha * alpha - 3.0 * alpha + 1.0);
}

bool alpha_in_range(AdversaryFamily family, double alpha) {
  if (!(alpha >= 1.0)) return false;
  switch (family) {
    case AdversaryFamily::kUniform:
      return alpha < solve_alpha(std::nullopt, 1).value;
    case AdversaryFamily::kPartitionMonotone:
      return alpha < 4.0;
    default:
      return alpha < (3.0 + std::sqrt(5.0)) / 2.0;
  }
}

std::unique_ptr<AdversaryDriver> AdversaryDriver::create(const AdversaryParams& params) {
  if (!(params.alpha >= 1.0)) throw AdversaryError("alpha must be at least 1");
  switch (params.family) {
    case AdversaryFamily::kUniform:
      return std::make_unique<UniformHardnessDriver>(params);
    case AdversaryFamily::kPartitionMonotone:
      return std::make_unique<PartitionMonotoneDriver>(params);
    default:
      return std::make_unique<PartitionGeneralDriver>(params);
  }
}

std::optional<ElementId> AdversaryDriver::next_element(std::span<const ElementId> visible) {
  if (terminated_) throw AdversaryError("next_element called after the driver stopped");
  return emit(visible);
}

std::optional<std::string> AdversaryDriver::audit(std::span<const ElementId>) const { return std::nullopt; }

void AdversaryDriver::stop(std::string reason) {
  terminated_ = true;
  reason_ = std::move(reason);
}

AdversaryOutcome run_adversary(AdversaryDriver& driver, const AlgorithmFactory& make_algorithm) {
  AdversaryOutcome out;
  out.family = family_name(driver.params().family);
  out.alpha = driver.params().alpha;
  out.alpha_in_range = alpha_in_range(driver.params().family, out.alpha);
  std::unique_ptr<OnlineAlgorithm> alg = make_algorithm(driver.objective(), driver.matroid());
  out.algorithm = alg->name();
  const Ground& ground = driver.ground();
  while (!driver.terminated()) {
    const std::optional<ElementId> e = driver.next_element(alg->solution());
    if (!e) break;
    const Decision d = alg->process(*e);
    const ElementSet s = alg->solution();
    AdversaryEvent ev;
    ev.round = ++out.rounds;
    ev.element = ground.name(*e);
    ev.accepted = d.accepted;
    if (d.evicted) ev.evicted = ground.name(*d.evicted);
    if (!driver.matroid().is_independent(s)) {
      out.violations.push_back("round " + std::to_string(ev.round) + ": algorithm returned a dependent set");
      out.events.push_back(ev);
      driver.stop("algorithm error");
      break;
    }
    if (auto msg = driver.audit(s)) out.violations.push_back(*msg);
    ev.f_S = driver.objective().value(s);
    ev.opt = driver.opt_value();
    ev.ratio = ev.opt > 0.0 ? ev.f_S / ev.opt : 1.0;
    out.min_ratio = std::min(out.min_ratio, ev.ratio);
    out.final_ratio = ev.ratio;
    out.events.push_back(ev);
    if (driver.params().stop_when_forced && ev.ratio * out.alpha <= 1.0 + 1e-12) {
      driver.stop("ratio forced to at most 1/alpha");
    }
  }
  out.reason = driver.reason();
  out.phases = driver.phase();
  return out;
}

}  // namespace subfree
