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

#ifndef SUBFREE_ALGORITHMS_H_
#define SUBFREE_ALGORITHMS_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "subfree/alpha.h"
#include "subfree/element.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"
#include "subfree/tracker.h"

namespace subfree {

class AlgorithmError : public std::invalid_argument {
 public:
  explicit AlgorithmError(const std::string& what) : std::invalid_argument(what) {}
};

// Outcome of one arrival. A proposal is a Decision computed without touching
// the state; commit() applies it.
struct Decision {
  ElementId element = 0;
  bool accepted = false;
  std::optional<ElementId> evicted;
  // w(u) at arrival (f({u}) for the singleton rule).
  double weight = 0.0;
  // The victim's weight just before removal, 0 when nothing leaves.
  double evicted_weight = 0.0;
  double threshold = 0.0;

  double gain() const { return weight - (evicted ? evicted_weight : 0.0); }
};

// Accept iff w(u) > (alpha * w_S(S) - w(A)) / k; a full S drops its minimum
// w_S element, earliest accepted on ties. Needs a uniform matroid and a
// monotone objective.
Decision propose_k_uniform(const OnlineState& st, ElementId u, double alpha);
// Add u when S + u stays independent and w(u) > 0; otherwise swap out the
// minimum-w_S element of the exchange set when w(u) >= c * w_S(u').
Decision propose_general_matroid(const OnlineState& st, ElementId u, double c);
// Keep u iff f({u}) beats the incumbent singleton (or f(empty) when S is empty).
Decision propose_best_singleton(const OnlineState& st, ElementId u);

void commit(OnlineState& st, const Decision& d);

Decision step_k_uniform(OnlineState& st, ElementId u, double alpha);
Decision step_general_matroid(OnlineState& st, ElementId u, double c = 2.0);
Decision best_singleton_step(OnlineState& st, ElementId u);

class OnlineAlgorithm {
 public:
  explicit OnlineAlgorithm(const Objective& f) : f_(&f) {}
  virtual ~OnlineAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual Decision process(ElementId u) = 0;
  // The feasible output after the latest round.
  virtual ElementSet solution() const = 0;
  // The value the competitive guarantee speaks about: f(solution) for
  // deterministic rules, an exact expectation for randomized ones, or NaN
  // when that expectation is out of reach.
  virtual double certified_value() const { return solution_value(); }
  // The guaranteed ratio against OPT of every prefix; 0 when none is claimed.
  virtual double guaranteed_ratio() const = 0;
  virtual const OnlineState* state() const { return nullptr; }

  const Objective& objective() const { return *f_; }
  double solution_value() const { return f_->value(solution()); }

 private:
  const Objective* f_;
};

class KUniformAlgorithm : public OnlineAlgorithm {
 public:
  // alpha defaults to the root for the matroid's k.
  KUniformAlgorithm(const Objective& f, const Matroid& m, std::optional<double> alpha = std::nullopt);
  std::string name() const override { return "k-uniform"; }
  Decision process(ElementId u) override { return step_k_uniform(st_, u, alpha_); }
  ElementSet solution() const override { return st_.feasible(); }
  double guaranteed_ratio() const override { return 1.0 / alpha_; }
  const OnlineState* state() const override { return &st_; }
  double alpha() const { return alpha_; }

 private:
  OnlineState st_;
  double alpha_;
};

class GeneralMatroidAlgorithm : public OnlineAlgorithm {
 public:
  GeneralMatroidAlgorithm(const Objective& f, const Matroid& m, double c = 2.0);
  std::string name() const override { return "general"; }
  Decision process(ElementId u) override { return step_general_matroid(st_, u, c_); }
  ElementSet solution() const override { return st_.feasible(); }
  // 1/4 is proven for c = 2 only.
  double guaranteed_ratio() const override { return c_ == 2.0 ? 0.25 : 0.0; }
  const OnlineState* state() const override { return &st_; }
  double c() const { return c_; }

 private:
  OnlineState st_;
  double c_;
};

class BestSingletonAlgorithm : public OnlineAlgorithm {
 public:
  // `k` is the cardinality the 1/k guarantee refers to; 0 claims nothing.
  BestSingletonAlgorithm(const Objective& f, const Matroid& m, int k = 0);
  std::string name() const override { return "best-singleton"; }
  Decision process(ElementId u) override { return best_singleton_step(st_, u); }
  ElementSet solution() const override { return st_.feasible(); }
  double guaranteed_ratio() const override { return k_ > 0 ? 1.0 / k_ : 0.0; }
  const OnlineState* state() const override { return &st_; }

 private:
  OnlineState st_;
  int k_;
};

// Uniform matroids: the singleton rule for k <= 3, the threshold rule otherwise.
std::unique_ptr<OnlineAlgorithm> make_uniform_dispatch(const Objective& f, const Matroid& m);

}  // namespace subfree

#endif  // SUBFREE_ALGORITHMS_H_
