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

#ifndef SUBFREE_ORACLE_H_
#define SUBFREE_ORACLE_H_

#include <span>
#include <vector>

#include "subfree/element.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"

namespace subfree {

struct OptResult {
  ElementSet set;
  double value = 0.0;
};

// Exhaustive maximum of f over independent subsets of `arrived`
// (|arrived| <= 20). Ties go to the lexicographically least sorted set.
OptResult brute_force_opt(const Objective& f, const Matroid& m, std::span<const ElementId> arrived);

// OPT of every prefix of `order`, computed in one pass: entry i is OPT of
// the first i elements (entry 0 is f of the empty set).
std::vector<double> prefix_opt_values(const Objective& f, const Matroid& m, std::span<const ElementId> order);

struct DominationCheck {
  bool holds = true;
  double without_replacement = 0.0;
  double independent = 0.0;
};

// E g(uniform k-subset of the ground) against E g(I_{k/n}(ground)), both exact.
DominationCheck check_ckp_domination(const Objective& g, int k);

struct SoftBoundCheck {
  bool holds = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

// f(O) <= soft(A) + sum over v in O of soft_marginal_rate(v, A), exactly.
SoftBoundCheck check_f_vs_fhat(const Objective& f, std::span<const ElementId> o, const FractionalVector& a);

// E f(I_p(A) u I_q(B)) >= (1-p)(1-q) f(empty) + p(1-q) f(A) + q(1-p) f(B) + pq f(A u B).
SoftBoundCheck check_union_sampling(const Objective& f, std::span<const ElementId> a, std::span<const ElementId> b,
                                    double p, double q);

}  // namespace subfree

#endif  // SUBFREE_ORACLE_H_
