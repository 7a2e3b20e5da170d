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

#include "subfree/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "subfree/kernels.h"

namespace subfree {
namespace {

ElementSet subset_of(std::span<const ElementId> ground, std::uint32_t mask) {
  ElementSet out;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) out.push_back(ground[i]);
  }
  return make_set(std::move(out));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

OptResult brute_force_opt(const Objective& f, const Matroid& m, std::span<const ElementId> arrived) {
  OptResult best;
  best.value = f.empty_value();
  for (std::uint32_t mask : m.enumerate_independent_masks(arrived)) {
    ElementSet s = subset_of(arrived, mask);
    const double v = f.value(s);
    if (v > best.value || (v == best.value && s < best.set)) {
      best.value = v;
      best.set = std::move(s);
    }
  }
  return best;
}

std::vector<double> prefix_opt_values(const Objective& f, const Matroid& m, std::span<const ElementId> order) {
  const std::size_t n = order.size();
  // best_by_top[i]: best independent set whose last position is i - 1.
  std::vector<double> best_by_top(n + 1, f.empty_value());
  for (std::uint32_t mask : m.enumerate_independent_masks(order)) {
    const std::size_t top = mask == 0 ? 0 : 32 - static_cast<std::size_t>(std::countl_zero(mask));
    best_by_top[top] = std::max(best_by_top[top], f.value(subset_of(order, mask)));
  }
  std::vector<double> out(n + 1);
  double running = best_by_top[0];
  for (std::size_t i = 0; i <= n; ++i) {
    running = std::max(running, best_by_top[i]);
    out[i] = running;
  }
  return out;
}

DominationCheck check_ckp_domination(const Objective& g, int k) {
  const ElementSet ground = g.elements();
  const int n = static_cast<int>(ground.size());
  if (n > 10) throw ObjectiveError("domination check supports grounds of at most 10 elements");
  if (k < 0 || k > n) throw ObjectiveError("k must lie in [0, n]");
  const std::vector<double> values = subset_values(g, ground);
  DominationCheck out;
  double sum_k = 0.0;
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (std::popcount(m) == k) sum_k += values[m];
  }
  out.without_replacement = sum_k / binomial(n, k);
  const double p = n == 0 ? 0.0 : static_cast<double>(k) / n;
  out.independent = sampled_value_p(g, ground, p);
  const double tol = 1e-12 * std::max(1.0, std::abs(out.independent));
  out.holds = out.without_replacement >= out.independent - tol;
  return out;
}

SoftBoundCheck check_f_vs_fhat(const Objective& f, std::span<const ElementId> o, const FractionalVector& a) {
  SoftBoundCheck out;
  out.lhs = f.value(o);
  out.rhs = soft_value(f, a);
  for (ElementId v : make_set(std::vector<ElementId>(o.begin(), o.end()))) out.rhs += soft_marginal_rate(f, v, a);
  out.slack = out.rhs - out.lhs;
  out.holds = out.slack >= -1e-9 * std::max(1.0, std::abs(out.lhs));
  return out;
}

SoftBoundCheck check_union_sampling(const Objective& f, std::span<const ElementId> a, std::span<const ElementId> b,
                                    double p, double q) {
  const ElementSet sa = make_set(std::vector<ElementId>(a.begin(), a.end()));
  const ElementSet sb = make_set(std::vector<ElementId>(b.begin(), b.end()));
  ElementSet both = sa;
  both.insert(both.end(), sb.begin(), sb.end());
  both = make_set(std::move(both));
  if (both.size() > kMaxExactSupport) throw ObjectiveError("union sampling check over more than 15 elements");
  std::vector<double> probs;
  for (ElementId e : both) {
    const bool in_a = set_contains(sa, e);
    const bool in_b = set_contains(sb, e);
    probs.push_back(in_a && in_b ? 1.0 - (1.0 - p) * (1.0 - q) : (in_a ? p : q));
  }
  std::vector<double> weights(std::size_t{1} << both.size());
  kernels::expand_product_weights(probs, weights);
  const std::vector<double> values = subset_values(f, both);
  SoftBoundCheck out;
  out.lhs = kernels::dot(weights, values);
  out.rhs = (1 - p) * (1 - q) * f.empty_value() + p * (1 - q) * f.value(sa) + q * (1 - p) * f.value(sb) +
            p * q * f.value(both);
  out.slack = out.lhs - out.rhs;
  out.holds = out.slack >= -1e-9 * std::max(1.0, std::abs(out.rhs));
  return out;
}

}  // namespace subfree
