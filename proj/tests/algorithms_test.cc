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


#include <algorithm>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "subfree/algorithms.h"
#include "subfree/alpha.h"
#include "subfree/generators.h"

namespace subfree {
namespace {

using testing::naive_opt;

Objective disjoint_linear(const std::vector<double>& values) {
  std::map<ElementId, double> w;
  for (std::size_t i = 0; i < values.size(); ++i) w[static_cast<ElementId>(i)] = values[i];
  return Objective::linear(w);
}

TEST(KUniformTest, FirstPositiveArrivalIsAccepted) {
  Objective f = disjoint_linear({0.5, 0.0});
  Matroid m = Matroid::uniform(4);
  OnlineState st(f, m);
  Decision d = step_k_uniform(st, 0, solve_alpha(4).value);
  EXPECT_TRUE(d.accepted);
  EXPECT_FALSE(d.evicted.has_value());
  EXPECT_DOUBLE_EQ(d.threshold, 0.0);
  d = step_k_uniform(st, 1, solve_alpha(4).value);
  EXPECT_FALSE(d.accepted);
}

TEST(KUniformTest, ThresholdAndEviction) {
  // alpha = 3, k = 1: after accepting weight 1 the threshold is 3 - 1 = 2.
  Objective f = disjoint_linear({1.0, 2.0, 2.5});
  Matroid m = Matroid::uniform(1);
  OnlineState st(f, m);
  step_k_uniform(st, 0, 3.0);
  Decision d = step_k_uniform(st, 1, 3.0);
  EXPECT_DOUBLE_EQ(d.threshold, 2.0);
  EXPECT_FALSE(d.accepted);
  d = step_k_uniform(st, 2, 3.0);
  EXPECT_TRUE(d.accepted);
  EXPECT_EQ(d.evicted, ElementId{0});
  EXPECT_EQ(st.feasible(), (ElementSet{2}));
}

TEST(KUniformTest, TiesEvictEarliest) {
  Objective f = disjoint_linear({1.0, 1.0, 5.0});
  Matroid m = Matroid::uniform(2);
  OnlineState st(f, m);
  // alpha = 1.5 admits both unit elements.
  ASSERT_TRUE(step_k_uniform(st, 1, 1.5).accepted);
  ASSERT_TRUE(step_k_uniform(st, 0, 1.5).accepted);
  Decision d = step_k_uniform(st, 2, 1.5);
  ASSERT_TRUE(d.accepted);
  EXPECT_EQ(d.evicted, ElementId{1});
}

TEST(GeneralMatroidTest, AddOnlyPositiveWeights) {
  Objective f = disjoint_linear({1.0, 0.0});
  Matroid m = Matroid::uniform(3);
  OnlineState st(f, m);
  EXPECT_TRUE(step_general_matroid(st, 0).accepted);
  EXPECT_FALSE(step_general_matroid(st, 1).accepted);
}

TEST(GeneralMatroidTest, SwapNeedsTwiceTheWeight) {
  {
    Objective f = disjoint_linear({1.0, 2.5});
    Matroid m = Matroid::uniform(1);
    OnlineState st(f, m);
    step_general_matroid(st, 0);
    Decision d = step_general_matroid(st, 1);
    EXPECT_TRUE(d.accepted);
    EXPECT_EQ(d.evicted, ElementId{0});
    EXPECT_DOUBLE_EQ(d.gain(), 1.5);
  }
  {
    Objective f = disjoint_linear({1.0, 1.9});
    Matroid m = Matroid::uniform(1);
    OnlineState st(f, m);
    step_general_matroid(st, 0);
    EXPECT_FALSE(step_general_matroid(st, 1).accepted);
    EXPECT_EQ(st.feasible(), (ElementSet{0}));
  }
}

TEST(GeneralMatroidTest, RejectsBadParameters) {
  Objective f = disjoint_linear({1.0});
  Matroid m = Matroid::uniform(1);
  EXPECT_THROW(GeneralMatroidAlgorithm(f, m, 1.0), AlgorithmError);
  Objective g = Objective::explicit_table({0}, {1.0, 0.5});
  EXPECT_THROW(GeneralMatroidAlgorithm(g, m), AlgorithmError);
  EXPECT_THROW(KUniformAlgorithm(f, Matroid::partition({0}, {1})), AlgorithmError);
}

TEST(BestSingletonTest, KeepsLargest) {
  Objective f = disjoint_linear({1.0, 3.0, 2.0});
  Matroid m = Matroid::uniform(1);
  BestSingletonAlgorithm alg(f, m);
  for (ElementId e : {0u, 1u, 2u}) alg.process(e);
  EXPECT_EQ(alg.solution(), (ElementSet{1}));
}

TEST(BestSingletonTest, TieKeepsIncumbent) {
  Objective f = disjoint_linear({2.0, 2.0});
  Matroid m = Matroid::uniform(1);
  BestSingletonAlgorithm alg(f, m);
  alg.process(0);
  EXPECT_FALSE(alg.process(1).accepted);
  EXPECT_EQ(alg.solution(), (ElementSet{0}));
}

TEST(BestSingletonTest, WithinFactorKOnLinear) {
  gen::Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    Ground ground;
    auto elems = gen::name_elements(ground, 8);
    Objective f = gen::random_linear(elems, rng);
    const int k = 1 + t % 4;
    Matroid m = Matroid::uniform(k);
    BestSingletonAlgorithm alg(f, m, k);
    double best = 0.0;
    for (ElementId e : elems) {
      alg.process(e);
      best = std::max(best, f.value(ElementSet{e}));
    }
    EXPECT_DOUBLE_EQ(alg.solution_value(), best);
    EXPECT_GE(alg.solution_value(), naive_opt(f, m, elems) / k - 1e-12);
  }
}

TEST(DispatchTest, SmallKUsesSingleton) {
  Objective f = disjoint_linear({1.0});
  for (int k = 1; k <= 6; ++k) {
    Matroid m = Matroid::uniform(k);
    auto alg = make_uniform_dispatch(f, m);
    EXPECT_EQ(alg->name(), k <= 3 ? "best-singleton" : "k-uniform") << k;
    if (k <= 3) {
      EXPECT_DOUBLE_EQ(alg->guaranteed_ratio(), 1.0 / k);
    } else {
      EXPECT_DOUBLE_EQ(alg->guaranteed_ratio(), 1.0 / solve_alpha(k).value);
    }
  }
}

TEST(ProposalTest, ProposalsDoNotMutate) {
  gen::Rng rng(6);
  Instance inst = gen::random_monotone_instance(8, rng, gen::MatroidMix::kUniform);
  OnlineState st(inst.f(), inst.m());
  for (ElementId u : inst.arrival) {
    const auto before = st.history();
    Decision p = propose_general_matroid(st, u, 2.0);
    EXPECT_EQ(st.history(), before);
    Decision d = step_general_matroid(st, u, 2.0);
    EXPECT_EQ(p.accepted, d.accepted);
    EXPECT_EQ(p.evicted, d.evicted);
  }
}

class PrefixRatioTest : public ::testing::TestWithParam<int> {};

TEST_P(PrefixRatioTest, ExchangeRuleQuarter) {
  gen::Rng rng(1000 + GetParam());
  Instance inst = gen::random_monotone_instance(4 + GetParam() % 7, rng);
  GeneralMatroidAlgorithm alg(inst.f(), inst.m());
  std::vector<ElementId> prefix;
  double prev = alg.solution_value();
  for (ElementId u : inst.arrival) {
    Decision d = alg.process(u);
    prefix.push_back(u);
    const double v = alg.solution_value();
    if (d.accepted) {
      EXPECT_GT(v, prev - 1e-12);
    }
    EXPECT_TRUE(inst.m().is_independent(alg.solution()));
    EXPECT_GE(v, 0.25 * naive_opt(inst.f(), inst.m(), prefix) - 1e-9);
    prev = v;
  }
}

TEST_P(PrefixRatioTest, ThresholdRule) {
  gen::Rng rng(2000 + GetParam());
  Ground ground;
  auto elems = gen::name_elements(ground, 10);
  std::shuffle(elems.begin(), elems.end(), rng);
  Objective f = gen::random_coverage(elems, rng);
  const int k = 4 + GetParam() % 5;
  Matroid m = Matroid::uniform(k);
  KUniformAlgorithm alg(f, m);
  std::vector<ElementId> prefix;
  for (ElementId u : elems) {
    alg.process(u);
    prefix.push_back(u);
    EXPECT_LE(static_cast<int>(alg.solution().size()), k);
    EXPECT_GE(alg.solution_value(), naive_opt(f, m, prefix) / alg.alpha() - 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PrefixRatioTest, ::testing::Range(0, 40));

}  // namespace
}  // namespace subfree
