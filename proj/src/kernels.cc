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

#include "subfree/kernels.h"

#include <cstdlib>
#include <string>

namespace subfree::kernels {
namespace {

struct Table {
  Isa isa;
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*dot_diff)(std::span<const double>, std::span<const double>, std::span<const double>);
  void (*expand)(std::span<const double>, std::span<double>);
};

Table select_table() {
  const char* env = std::getenv("SUBFREE_KERNELS");
  const bool force_scalar = env != nullptr && std::string(env) == "scalar";
  if (!force_scalar && avx2_available()) {
    return {Isa::kAvx2, &avx2::dot, &avx2::dot_diff, &avx2::expand_product_weights};
  }
  return {Isa::kScalar, &scalar::dot, &scalar::dot_diff, &scalar::expand_product_weights};
}

const Table& table() {
  static const Table t = select_table();
  return t;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return table().isa; }

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> a, std::span<const double> b) { return table().dot(a, b); }

double dot_diff(std::span<const double> w, std::span<const double> hi, std::span<const double> lo) {
  return table().dot_diff(w, hi, lo);
}

void expand_product_weights(std::span<const double> probs, std::span<double> out) {
  table().expand(probs, out);
}

}  // namespace subfree::kernels
