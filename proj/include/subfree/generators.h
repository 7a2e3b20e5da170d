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

#ifndef SUBFREE_GENERATORS_H_
#define SUBFREE_GENERATORS_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "subfree/element.h"
#include "subfree/instance.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"

// Seeded random instances for property tests and verification suites.
namespace subfree::gen {

using Rng = std::mt19937_64;

// Interns "e0", "e1", ... and returns their ids.
std::vector<ElementId> name_elements(Ground& ground, int n, const std::string& prefix = "e");

// Weighted coverage over `items` items (0 picks a size from the element count).
Objective random_coverage(std::span<const ElementId> elems, Rng& rng, int items = 0);
Objective random_linear(std::span<const ElementId> elems, Rng& rng);

// Coverage tabulated as an explicit table. With `nonmonotone`, a random
// modular term is subtracted and the table shifted back to nonnegative; the
// result is submodular but usually not monotone.
Objective random_submodular_table(std::span<const ElementId> elems, Rng& rng, bool nonmonotone);

Matroid random_uniform(std::span<const ElementId> elems, Rng& rng, int k_min = 1, int k_max = 4);
Matroid random_partition(std::span<const ElementId> elems, Rng& rng, int max_parts = 3, int max_capacity = 2);
// Graphic matroid of a random multigraph without loops, stored explicitly
// through its spanning forests.
Matroid random_graphic(std::span<const ElementId> elems, Rng& rng, int vertices = 0);

enum class MatroidMix { kUniform, kPartition, kGraphic, kAny };
Matroid random_matroid(std::span<const ElementId> elems, Rng& rng, MatroidMix mix = MatroidMix::kAny);

enum class ObjectiveMix { kCoverage, kLinear, kTable, kAny };

// n elements named e0.. in a random arrival order.
Instance random_monotone_instance(int n, Rng& rng, MatroidMix mix = MatroidMix::kAny,
                                  ObjectiveMix objective = ObjectiveMix::kAny);
Instance random_nonmonotone_instance(int n, Rng& rng, MatroidMix mix = MatroidMix::kAny);
// Two or three agents over a shared stream; each agent knows a random subset
// of the elements.
Instance random_bipartite_instance(int n, int agents, Rng& rng);

}  // namespace subfree::gen

#endif  // SUBFREE_GENERATORS_H_
