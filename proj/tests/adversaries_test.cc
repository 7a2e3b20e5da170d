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
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "subfree/adversaries.h"
#include "subfree/algorithms.h"
#include "subfree/alpha.h"
#include "subfree/oracle.h"

namespace subfree {
namespace {

AlgorithmFactory exchange_rule() {
  return [](const Objective& f, const Matroid& m) { return std::make_unique<GeneralMatroidAlgorithm>(f, m); };
}
AlgorithmFactory singleton_rule() {
  return [](const Objective& f, const Matroid& m) { return std::make_unique<BestSingletonAlgorithm>(f, m); };
}
AlgorithmFactory threshold_rule() {
  return [](const Objective& f, const Matroid& m) { return std::make_unique<KUniformAlgorithm>(f, m); };
}

double rel_error(long double residual, long double scale) {
  return static_cast<double>(std::fabs(residual) / std::max(1.0L, scale));
}

TEST(RecurrenceTest, MonotoneWeightsAtThree) {
  auto a = monotone_weights(3.0);
  ASSERT_EQ(a.size(), 6u);
  const double expect[] = {1, 2, 3, 3, 0, -9};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(static_cast<double>(a[i]), expect[i], 1e-12);
}

TEST(RecurrenceTest, SecondWeightNearThreeForAlphaNearFour) {
  auto a = monotone_weights(3.999);
  ASSERT_GE(a.size(), 2u);
  EXPECT_NEAR(static_cast<double>(a[1]), 3.0, 1e-3);
}

TEST(RecurrenceTest, MonotoneRelations) {
  for (double alpha : {2.5, 3.0, 3.5, 3.9, 3.99}) {
    auto a = monotone_weights(alpha);
    ASSERT_LT(a.back(), 0.0L) << alpha;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) EXPECT_GE(a[i], 0.0L);
    long double prefix = 0.0L;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      prefix += a[i];
      // sum_{j <= i+1} a_j = alpha a_i
      EXPECT_LT(rel_error(prefix + a[i + 1] - alpha * a[i], prefix), 1e-9) << alpha << " " << i;
      if (i + 2 < a.size()) {
        EXPECT_LT(rel_error(a[i + 2] - alpha * a[i + 1] + alpha * a[i], alpha * std::fabs(a[i + 1])), 1e-9);
      }
    }
  }
}

TEST(RecurrenceTest, GeneralRelations) {
  for (double alpha : {2.0, 2.5, 2.6, 2.615}) {
    GeneralWeights w = general_weights(alpha);
    ASSERT_FALSE(w.b.empty());
    EXPECT_LE(w.b.back(), 0.0L) << alpha;
    const long double c = alpha * alpha - alpha + 1;
    for (std::size_t i = 1; i + 1 < w.b.size(); ++i) {
      const long double scale = c * std::fabs(w.b[i]) + alpha * alpha * std::fabs(w.b[i - 1]);
      EXPECT_LT(rel_error(w.b[i + 1] - c * w.b[i] + alpha * alpha * w.b[i - 1], scale), 1e-9) << alpha << " " << i;
    }
    for (std::size_t i = 1; i + 1 < w.a.size(); ++i) {
      const long double scale = c * std::fabs(w.a[i]) + alpha * alpha * std::fabs(w.a[i - 1]);
      EXPECT_LT(rel_error(w.a[i + 1] - c * w.a[i] + alpha * alpha * w.a[i - 1], scale), 1e-9);
    }
  }
  EXPECT_LT(general_discriminant(2.0), 0.0);
  EXPECT_LT(general_discriminant(2.5), 0.0);
  EXPECT_GT(general_discriminant(2.7), 0.0);
}

TEST(UniformHardnessTest, CellWeights) {
  IntervalCoverage ic;
  ic.epsilon = 0.5;
  EXPECT_DOUBLE_EQ(ic.cell_weight(0), 2.0);
  EXPECT_DOUBLE_EQ(ic.cell_weight(1), 4.0);
}

TEST(DriverTest, PartitionMonotoneStopsAtFirstNegative) {
  AdversaryParams p;
  p.family = AdversaryFamily::kPartitionMonotone;
  p.alpha = 3.0;
  auto d = AdversaryDriver::create(p);
  // Keep every (x_i, 0) and nothing else.
  int rounds = 0;
  ElementSet visible;
  while (auto e = d->next_element(visible)) {
    ++rounds;
    const std::string& name = d->ground().name(*e);
    visible = name.ends_with("@0") ? ElementSet{*e} : ElementSet{};
  }
  EXPECT_EQ(d->phase(), 5);
  EXPECT_EQ(rounds, 10);
  EXPECT_TRUE(d->terminated());
  EXPECT_THROW(d->next_element(visible), AdversaryError);
}

TEST(DriverTest, Errors) {
  EXPECT_THROW(parse_family("nope"), AdversaryError);
  AdversaryParams p;
  p.alpha = 0.5;
  EXPECT_THROW(AdversaryDriver::create(p), AdversaryError);
  p.alpha = 2.0;
  p.family = AdversaryFamily::kUniform;
  p.epsilon = 1.5;
  EXPECT_THROW(AdversaryDriver::create(p), AdversaryError);
  for (auto f : {AdversaryFamily::kUniform, AdversaryFamily::kPartitionMonotone, AdversaryFamily::kPartitionGeneral}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
}

struct OptCase {
  AdversaryFamily family;
  double alpha;
  int k;
  std::optional<int> phases;
  int rule;  // 0 exchange, 1 singleton, 2 threshold
};

class ClosedFormOptTest : public ::testing::TestWithParam<OptCase> {};

// The drivers' closed-form optimum equals brute force over every small prefix.
TEST_P(ClosedFormOptTest, MatchesBruteForce) {
  const OptCase c = GetParam();
  AdversaryParams p;
  p.family = c.family;
  p.alpha = c.alpha;
  p.k = c.k;
  p.phases = c.phases;
  p.epsilon = 0.25;
  p.delta = 0.5;
  p.stop_when_forced = false;
  auto d = AdversaryDriver::create(p);
  const AlgorithmFactory make = c.rule == 0 ? exchange_rule() : c.rule == 1 ? singleton_rule() : threshold_rule();
  auto alg = make(d->objective(), d->matroid());
  int checked = 0;
  while (d->arrived().size() < 16) {
    auto e = d->next_element(alg->solution());
    if (!e) break;
    alg->process(*e);
    if (d->phase() > 3) break;
    const OptResult opt = brute_force_opt(d->objective(), d->matroid(), d->arrived());
    EXPECT_NEAR(d->opt_value(), opt.value, 1e-9 * std::max(1.0, opt.value)) << "round " << d->arrived().size();
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

INSTANTIATE_TEST_SUITE_P(
    Families, ClosedFormOptTest,
    ::testing::Values(OptCase{AdversaryFamily::kPartitionMonotone, 3.0, 1, {}, 0},
                      OptCase{AdversaryFamily::kPartitionMonotone, 3.9, 1, {}, 0},
                      OptCase{AdversaryFamily::kPartitionMonotone, 2.5, 1, {}, 1},
                      OptCase{AdversaryFamily::kPartitionGeneral, 2.5, 1, {}, 0},
                      OptCase{AdversaryFamily::kPartitionGeneral, 2.6, 1, {}, 0},
                      OptCase{AdversaryFamily::kPartitionGeneral, 2.5, 1, {}, 1},
                      OptCase{AdversaryFamily::kUniform, 2.0, 1, 3, 0},
                      OptCase{AdversaryFamily::kUniform, 2.0, 2, 3, 0},
                      OptCase{AdversaryFamily::kUniform, 2.0, 4, 3, 2},
                      OptCase{AdversaryFamily::kUniform, 2.0, 2, 3, 1}));

TEST(RunAdversaryTest, SingletonForcedAtThree) {
  AdversaryParams p;
  p.family = AdversaryFamily::kPartitionMonotone;
  p.alpha = 3.0;
  auto d = AdversaryDriver::create(p);
  AdversaryOutcome out = run_adversary(*d, singleton_rule());
  EXPECT_TRUE(out.violations.empty());
  EXPECT_LE(out.min_ratio, 1.0 / 3.0 + 1e-9);
  EXPECT_TRUE(out.forced());
}

TEST(RunAdversaryTest, ExchangeRuleBetweenQuarterAndOneOverAlpha) {
  for (double alpha : {2.5, 3.0, 3.5, 3.9}) {
    AdversaryParams p;
    p.family = AdversaryFamily::kPartitionMonotone;
    p.alpha = alpha;
    p.stop_when_forced = false;
    auto d = AdversaryDriver::create(p);
    AdversaryOutcome out = run_adversary(*d, exchange_rule());
    EXPECT_TRUE(out.violations.empty());
    EXPECT_LE(out.min_ratio, 1.0 / alpha + 1e-9) << alpha;
    for (const AdversaryEvent& ev : out.events) EXPECT_GE(ev.ratio, 0.25 - 1e-9) << alpha << " " << ev.round;
  }
}

TEST(RunAdversaryTest, GeneralFamilyForcesDeterministicRules) {
  for (double alpha : {2.0, 2.5}) {
    for (const auto& make : {exchange_rule(), singleton_rule()}) {
      AdversaryParams p;
      p.family = AdversaryFamily::kPartitionGeneral;
      p.alpha = alpha;
      auto d = AdversaryDriver::create(p);
      AdversaryOutcome out = run_adversary(*d, make);
      EXPECT_TRUE(d->terminated());
      EXPECT_TRUE(out.violations.empty());
      EXPECT_LE(out.min_ratio, 1.0 / alpha + 1e-9) << alpha << " " << out.algorithm;
    }
  }
}

TEST(RunAdversaryTest, UnionNeverAccepted) {
  AdversaryParams p;
  p.family = AdversaryFamily::kUniform;
  p.alpha = 3.0;
  p.k = 20;
  p.epsilon = 0.05;
  p.delta = 0.5;
  p.stop_when_forced = false;
  auto d = AdversaryDriver::create(p);
  AdversaryOutcome out = run_adversary(*d, threshold_rule());
  EXPECT_TRUE(out.violations.empty());
  EXPECT_EQ(out.phases, 10);
  for (const AdversaryEvent& ev : out.events) {
    if (ev.element.starts_with("U")) {
      EXPECT_FALSE(ev.accepted) << ev.element;
    }
    EXPECT_GE(ev.ratio, 1.0 / solve_alpha(20).value - 1e-9);
  }
}

TEST(RunAdversaryTest, EarlyStopOnForcedRatio) {
  AdversaryParams p;
  p.family = AdversaryFamily::kPartitionMonotone;
  p.alpha = 3.0;
  auto d = AdversaryDriver::create(p);
  AdversaryOutcome out = run_adversary(*d, exchange_rule());
  EXPECT_EQ(out.final_ratio, out.min_ratio);
  EXPECT_LE(out.final_ratio * 3.0, 1.0 + 1e-12);
}

}  // namespace
}  // namespace subfree
