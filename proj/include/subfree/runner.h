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

#ifndef SUBFREE_RUNNER_H_
#define SUBFREE_RUNNER_H_

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subfree/algorithms.h"
#include "subfree/instance.h"

namespace subfree {

enum class AlgorithmKind {
  kKUniform,
  kGeneral,
  kPartitionFrac,
  kBipartite,
  kNonmonoGeneral,
  kNonmonoUniform,
  kBestSingleton,
};

std::string algorithm_kind_name(AlgorithmKind kind);
AlgorithmKind parse_algorithm_kind(const std::string& name);
bool is_randomized(AlgorithmKind kind);

struct RunOptions {
  AlgorithmKind alg = AlgorithmKind::kGeneral;
  std::uint64_t seed = 0;
  // Replaces the instance matroid by a k-uniform one.
  std::optional<int> k;
  double c = 2.0;
  // Fractional mass granularity.
  double delta = 0.02;
  bool check_every_round = false;
  int trials = 1;
  // 0 picks the hardware concurrency.
  int threads = 0;
};

struct RoundRecord {
  int round = 0;
  std::string element;
  bool accepted = false;
  std::optional<std::string> evicted;
  std::optional<int> agent;
  double f_S = 0.0;
  // Value the guarantee is stated for: f(S), or its exact expectation for
  // randomized rules.
  double certified = 0.0;
  std::optional<double> opt_prefix;
  std::optional<double> ratio;
};

struct RunReport {
  std::string alg;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  int trials = 1;
  std::vector<RoundRecord> rounds;
  // Mean over trials of the final f(S).
  double f_S = 0.0;
  std::vector<double> trial_values;
  double certified = 0.0;
  std::optional<double> opt;
  std::optional<double> ratio;
  double guaranteed_ratio = 0.0;
  std::optional<std::string> violation;
};

// Derives the seed of trial t from the run seed.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

// Builds a single-agent algorithm over (f, m); the bipartite rule is handled
// by run_instance directly.
std::unique_ptr<OnlineAlgorithm> make_algorithm(AlgorithmKind kind, const Objective& f, const Matroid& m,
                                                const RunOptions& options, std::uint64_t seed);

// Replays the arrival order. Round records come from trial 0; with
// check_every_round every round compares the certified value with the
// guaranteed ratio times the brute-force prefix optimum, and the first
// failure is recorded in `violation`.
RunReport run_instance(const Instance& inst, const RunOptions& options);

// One JSON object per round, then the final record, each on its own line.
std::string report_to_jsonl(const RunReport& report);

}  // namespace subfree

#endif  // SUBFREE_RUNNER_H_
