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

#ifndef SUBFREE_VERIFY_H_
#define SUBFREE_VERIFY_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subfree/element.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"

namespace subfree {

enum class MonitoredRule { kKUniform, kGeneral };

struct LemmaReport {
  int rounds = 0;
  int changes = 0;
  double min_ratio = 1.0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Runs the threshold rule (param = alpha) or the exchange rule (param = c) and
// after every round asserts:
//   f(S) strictly increases whenever S changes (up to 1e-12);
//   sum of w over A equals f(A) - f(empty);
//   w_S of every survivor is nondecreasing, frozen weights never change;
//   threshold rule: alpha * sum_S w_S - w(A) is nondecreasing and every
//     replacement has w(u) > alpha / (alpha - 1) * w_S(u');
//   exchange rule: w(A) <= c / (c - 1) * w(S), and S maximizes the frozen
//     weights over independent subsets of A (when |A| <= greedy_limit);
//   f(S) >= guarantee * OPT(prefix) - 1e-9 (prefixes of at most 20 arrivals).
LemmaReport run_with_lemma_checks(const Objective& f, const Matroid& m, std::span<const ElementId> arrival,
                                  MonitoredRule rule, double param, std::size_t greedy_limit = 10);

struct FractionalCheck {
  double soft = 0.0;
  double opt = 0.0;
  double slack = 0.0;
  double rounding_mean = 0.0;
  double rounding_std_error = 0.0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Runs the discretized fractional algorithm on a partition matroid and checks
//   soft(S) >= OPT / ratio_denominator - alpha * Delta * max unit weight * #parts,
//   mean of f(rounded set) over `samples` redraws >= soft(S) - 3 standard errors,
//   every rounded set independent, and the per-part threshold
//   alpha * w(S|l) - w(A|l) nondecreasing up to alpha * max unit weight * Delta
//   per removed unit.
FractionalCheck check_fractional_run(const Objective& f, const Matroid& m, std::span<const ElementId> arrival,
                                     int units_per_one, std::uint64_t seed, int samples,
                                     double ratio_denominator = 3.15);

struct SuiteResult {
  std::string name;
  int cases = 0;
  int checks = 0;
  // Each failure names the seed and case that reproduce it.
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Random small runs of both deterministic rules under every lemma monitor.
SuiteResult verify_lemmas(std::uint64_t seed, int cases);
// Fractional runs with rounding, plus f(O) <= soft(A) + sum soft marginals.
SuiteResult verify_rounding(std::uint64_t seed, int cases);
// Sampling without replacement against independent sampling, every k.
SuiteResult verify_sampling(std::uint64_t seed, int cases);

// "lemmas", "rounding", "sampling" or "all".
std::vector<SuiteResult> run_suites(const std::string& suite, std::uint64_t seed, int cases);

}  // namespace subfree

#endif  // SUBFREE_VERIFY_H_
