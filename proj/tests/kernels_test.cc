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


#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "subfree/kernels.h"

namespace subfree::kernels {
namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double naive_dot(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

TEST(KernelsTest, ScalarDotMatchesNaive) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1024u}) {
    auto a = random_vector(n, rng), b = random_vector(n, rng);
    EXPECT_NEAR(scalar::dot(a, b), naive_dot(a, b), 1e-12 * (1.0 + n));
  }
}

TEST(KernelsTest, ProductWeightsMatchDefinition) {
  const std::vector<double> p = {0.1, 0.5, 0.75};
  std::vector<double> out(8);
  scalar::expand_product_weights(p, out);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    double expect = 1.0;
    for (int i = 0; i < 3; ++i) expect *= (mask >> i & 1) ? p[i] : 1.0 - p[i];
    EXPECT_NEAR(out[mask], expect, 1e-15);
  }
  double total = 0.0;
  for (double x : out) total += x;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(KernelsTest, Avx2MatchesScalar) {
  if (!avx2_available()) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  std::mt19937_64 rng(12);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 15u, 64u, 1000u, 4096u}) {
    auto a = random_vector(n, rng), b = random_vector(n, rng), c = random_vector(n, rng);
    const double tol = 1e-12 * (1.0 + n);
    EXPECT_NEAR(avx2::dot(a, b), scalar::dot(a, b), tol) << n;
    EXPECT_NEAR(avx2::dot_diff(a, b, c), scalar::dot_diff(a, b, c), tol) << n;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n <= 12; ++n) {
    std::vector<double> p(n);
    for (double& x : p) x = u(rng);
    std::vector<double> s(std::size_t{1} << n), v(std::size_t{1} << n);
    scalar::expand_product_weights(p, s);
    avx2::expand_product_weights(p, v);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], v[i], 1e-15) << n << " " << i;
  }
}

TEST(KernelsTest, DispatchAgreesWithScalar) {
  std::mt19937_64 rng(13);
  auto a = random_vector(257, rng), b = random_vector(257, rng), c = random_vector(257, rng);
  EXPECT_NEAR(dot(a, b), scalar::dot(a, b), 1e-10);
  EXPECT_NEAR(dot_diff(a, b, c), scalar::dot_diff(a, b, c), 1e-10);
  EXPECT_FALSE(isa_name(active_isa()).empty());
  if (!avx2_available()) {
    EXPECT_EQ(active_isa(), Isa::kScalar);
  }
}

}  // namespace
}  // namespace subfree::kernels
