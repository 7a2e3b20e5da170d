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

#include <cassert>
#include <cstddef>

#include "subfree/kernels.h"

namespace subfree::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double dot_diff(std::span<const double> w, std::span<const double> hi, std::span<const double> lo) {
  assert(w.size() == hi.size() && w.size() == lo.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * (hi[i] - lo[i]);
  return acc;
}

void expand_product_weights(std::span<const double> probs, std::span<double> out) {
  assert(out.size() == (std::size_t{1} << probs.size()));
  out[0] = 1.0;
  std::size_t filled = 1;
  for (double p : probs) {
    const double q = 1.0 - p;
    for (std::size_t m = 0; m < filled; ++m) {
      out[m + filled] = out[m] * p;
      out[m] *= q;
    }
    filled *= 2;
  }
}

}  // namespace subfree::kernels::scalar
