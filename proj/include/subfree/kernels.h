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

#ifndef SUBFREE_KERNELS_H_
#define SUBFREE_KERNELS_H_

#include <span>
#include <string_view>

// Data-parallel inner loops of the exact expectation code: every exact
// extension value is a dot product between a 2^n table of set values and the
// 2^n table of product-form subset probabilities.
//
// Each kernel has a scalar reference implementation and an AVX2/FMA variant.
// The top-level functions dispatch once, at first use, to the best variant the
// CPU supports. Setting SUBFREE_KERNELS=scalar in the environment pins the
// scalar path.

namespace subfree::kernels {

enum class Isa { kScalar, kAvx2 };

Isa active_isa();
std::string_view isa_name(Isa isa);
bool avx2_available();

// sum_i a[i] * b[i]. Spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

// sum_i w[i] * (hi[i] - lo[i]). Spans must have equal length.
double dot_diff(std::span<const double> w, std::span<const double> hi, std::span<const double> lo);

// Writes the 2^n product weights of independent inclusion with the given
// probabilities: out[mask] = prod_{i in mask} p[i] * prod_{i not in mask} (1 - p[i]).
// out.size() must equal 2^probs.size().
void expand_product_weights(std::span<const double> probs, std::span<double> out);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double dot_diff(std::span<const double> w, std::span<const double> hi, std::span<const double> lo);
void expand_product_weights(std::span<const double> probs, std::span<double> out);
}  // namespace scalar

namespace avx2 {
// Callers must check avx2_available() first.
double dot(std::span<const double> a, std::span<const double> b);
double dot_diff(std::span<const double> w, std::span<const double> hi, std::span<const double> lo);
void expand_product_weights(std::span<const double> probs, std::span<double> out);
}  // namespace avx2

}  // namespace subfree::kernels

#endif  // SUBFREE_KERNELS_H_
