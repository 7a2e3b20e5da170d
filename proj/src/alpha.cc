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

#include "subfree/alpha.h"

#include <cmath>

namespace subfree {
namespace {

long double residual_ld(std::optional<int> k, int rho, long double a) {
  const long double x = a - rho - 1;
  if (!k) return std::exp(x) - a;
  const long double n = static_cast<long double>(rho) * *k + 1;
  return std::exp(n * std::log1p(x / n)) - a;
}

}  // namespace

double alpha_residual(std::optional<int> k, int rho, double a) {
  return static_cast<double>(residual_ld(k, rho, a));
}

AlphaConstant solve_alpha(std::optional<int> k, int rho) {
  if (rho != 1 && rho != 3) throw AlphaError("rho must be 1 or 3");
  if (k && *k < 1) throw AlphaError("k must be positive");
  if (k && rho == 1 && *k < 4) throw AlphaError("rho = 1 needs k >= 4");
  long double lo = rho == 1 ? 3.0L : rho + 1.0L;
  long double hi = rho == 1 ? 4.0L : 8.0L;
  long double flo = residual_ld(k, rho, lo);
  const long double fhi = residual_ld(k, rho, hi);
  if (!(flo < 0 && fhi > 0)) throw AlphaError("no sign change on the bracketing interval");
  for (int iter = 0; iter < 200 && hi - lo > 0; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const long double fm = residual_ld(k, rho, mid);
    if (fm < 0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const long double root = std::fabs(flo) < std::fabs(residual_ld(k, rho, hi)) ? lo : hi;
  if (std::fabs(residual_ld(k, rho, root)) >= 1e-10L) throw AlphaError("bisection did not reach residual 1e-10");
  return AlphaConstant{k, rho, static_cast<double>(root)};
}

}  // namespace subfree
