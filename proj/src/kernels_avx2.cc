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

// Compiled with -mavx2 -mfma. Nothing in this file may run unless
// avx2_available() returned true.

#include <immintrin.h>

#include <cassert>
#include <cstddef>

#include "subfree/kernels.h"

namespace subfree::kernels::avx2 {
namespace {

double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double dot_diff(std::span<const double> w, std::span<const double> hi, std::span<const double> lo) {
  assert(w.size() == hi.size() && w.size() == lo.size());
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(hi.data() + i), _mm256_loadu_pd(lo.data() + i));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + i), d, acc);
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += w[i] * (hi[i] - lo[i]);
  return total;
}

void expand_product_weights(std::span<const double> probs, std::span<double> out) {
  assert(out.size() == (std::size_t{1} << probs.size()));
  out[0] = 1.0;
  std::size_t filled = 1;
  for (double p : probs) {
    const double q = 1.0 - p;
    std::size_t m = 0;
    if (filled >= 4) {
      const __m256d vp = _mm256_set1_pd(p);
      const __m256d vq = _mm256_set1_pd(q);
      for (; m + 4 <= filled; m += 4) {
        const __m256d cur = _mm256_loadu_pd(out.data() + m);
        _mm256_storeu_pd(out.data() + m + filled, _mm256_mul_pd(cur, vp));
        _mm256_storeu_pd(out.data() + m, _mm256_mul_pd(cur, vq));
      }
    }
    for (; m < filled; ++m) {
      out[m + filled] = out[m] * p;
      out[m] *= q;
    }
    filled *= 2;
  }
}

}  // namespace subfree::kernels::avx2
