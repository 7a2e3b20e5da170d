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


#include <set>

#include "gtest/gtest.h"
#include "subfree/generators.h"
#include "subfree/instance.h"

namespace subfree {
namespace {

TEST(GeneratorsTest, SameSeedSameInstance) {
  for (int seed = 0; seed < 10; ++seed) {
    gen::Rng a(seed), b(seed);
    EXPECT_EQ(canonical_dump(instance_to_json(gen::random_monotone_instance(8, a))),
              canonical_dump(instance_to_json(gen::random_monotone_instance(8, b))));
  }
}

TEST(GeneratorsTest, ArrivalIsPermutationOfNamedElements) {
  gen::Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    Instance inst = gen::random_monotone_instance(9, rng);
    std::set<std::string> names;
    for (ElementId e : inst.arrival) names.insert(inst.ground.name(e));
    EXPECT_EQ(names.size(), 9u);
    EXPECT_TRUE(names.contains("e0"));
    EXPECT_TRUE(names.contains("e8"));
    EXPECT_TRUE(inst.f().is_monotone());
    for (ElementId e : inst.arrival) EXPECT_TRUE(inst.m().is_independent(ElementSet{e}));
  }
}

TEST(GeneratorsTest, MatroidMixes) {
  gen::Rng rng(2);
  Ground ground;
  auto elems = gen::name_elements(ground, 7);
  EXPECT_TRUE(gen::random_matroid(elems, rng, gen::MatroidMix::kUniform).is_uniform());
  EXPECT_TRUE(gen::random_matroid(elems, rng, gen::MatroidMix::kPartition).is_partition());
  for (int t = 0; t < 20; ++t) {
    Matroid g = gen::random_graphic(elems, rng);
    EXPECT_TRUE(std::holds_alternative<ExplicitMatroid>(g.variant()));
    EXPECT_GE(g.rank(elems), 1);
    EXPECT_LE(g.rank(elems), 4);
  }
}

TEST(GeneratorsTest, NonmonotoneTablesAreSubmodularAndUsuallyNotMonotone) {
  gen::Rng rng(3);
  int nonmonotone = 0;
  for (int t = 0; t < 50; ++t) {
    // Construction validates submodularity and non-negativity.
    Instance inst = gen::random_nonmonotone_instance(6, rng);
    if (!inst.f().is_monotone()) ++nonmonotone;
  }
  EXPECT_GT(nonmonotone, 25);
}

TEST(GeneratorsTest, BipartiteAgents) {
  gen::Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    Instance inst = gen::random_bipartite_instance(8, 2 + t % 2, rng);
    EXPECT_EQ(inst.agents.size(), static_cast<std::size_t>(2 + t % 2));
    EXPECT_EQ(inst.arrival.size(), 8u);
    for (const AgentSpec& a : inst.agents) {
      EXPECT_TRUE(a.objective.is_monotone());
      if (a.rule == AgentRule::kKUniform) {
        EXPECT_TRUE(a.matroid.is_uniform());
      }
    }
  }
}

}  // namespace
}  // namespace subfree
