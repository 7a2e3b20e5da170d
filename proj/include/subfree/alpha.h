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

#ifndef SUBFREE_ALPHA_H_
#define SUBFREE_ALPHA_H_

#include <optional>
#include <stdexcept>
#include <string>

namespace subfree {

class AlphaError : public std::invalid_argument {
 public:
  explicit AlphaError(const std::string& what) : std::invalid_argument(what) {}
};

// Threshold constant: the root a >= rho + 1 of
//   (1 + (a - rho - 1) / (rho k + 1))^(rho k + 1) = a,
// or of exp(a - rho - 1) = a when k is unbounded.
struct AlphaConstant {
  std::optional<int> k;  // empty means infinity
  int rho = 1;
  double value = 0.0;

  double inverse() const { return 1.0 / value; }
  // (1/alpha)(1 - 1/rho), the guarantee of the slot-sampling variant.
  double sampled_ratio() const { return inverse() * (1.0 - 1.0 / rho); }
};

// Bisection on (3,4) for rho = 1 (requires k >= 4) and on (rho+1, 8) for rho = 3.
AlphaConstant solve_alpha(std::optional<int> k, int rho = 1);

// Left-hand side minus a; the root has residual below 1e-10.
double alpha_residual(std::optional<int> k, int rho, double a);

}  // namespace subfree

#endif  // SUBFREE_ALPHA_H_
