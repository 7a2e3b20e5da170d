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

#include "subfree/runner.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "subfree/bipartite.h"
#include "subfree/fractional.h"
#include "subfree/nonmonotone.h"
#include "subfree/oracle.h"

namespace subfree {
namespace {

using nlohmann::json;

// Prefix optima above this many arrivals are not attempted unless asked for.
constexpr std::size_t kDefaultOptLimit = 16;

struct TrialResult {
  double value = 0.0;
  double certified = 0.0;
  std::vector<RoundRecord> rounds;
  std::optional<std::string> violation;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::optional<std::string> check_round(const RoundRecord& r, double guarantee) {
  if (!r.opt_prefix || std::isnan(r.certified)) return std::nullopt;
  if (r.certified >= guarantee * *r.opt_prefix - 1e-9) return std::nullopt;
  return "round " + std::to_string(r.round) + ": value " + format_double(r.certified) + " < " +
         format_double(guarantee) + " * OPT " + format_double(*r.opt_prefix);
}

void finish_round(RoundRecord& rec, const std::vector<double>& prefix_opt, std::size_t i) {
  if (i < prefix_opt.size()) {
    rec.opt_prefix = prefix_opt[i];
    if (prefix_opt[i] > 0.0) rec.ratio = rec.certified / prefix_opt[i];
  }
}

TrialResult run_single(const Instance& inst, const Matroid& m, const RunOptions& options, std::uint64_t seed,
                       bool record, const std::vector<double>& prefix_opt, double& guarantee) {
  TrialResult out;
  const Objective& f = inst.f();
  auto alg = make_algorithm(options.alg, f, m, options, seed);
  guarantee = alg->guaranteed_ratio();
  const bool check = options.check_every_round;
  int round = 0;
  for (ElementId u : inst.arrival) {
    const Decision d = alg->process(u);
    ++round;
    if (!record && !check) continue;
    RoundRecord rec;
    rec.round = round;
    rec.element = inst.ground.name(u);
    rec.accepted = d.accepted;
    if (d.evicted) rec.evicted = inst.ground.name(*d.evicted);
    rec.f_S = alg->solution_value();
    rec.certified = alg->certified_value();
    finish_round(rec, prefix_opt, static_cast<std::size_t>(round));
    if (check && !out.violation) out.violation = check_round(rec, guarantee);
    if (record) out.rounds.push_back(std::move(rec));
  }
  out.value = alg->solution_value();
  out.certified = alg->certified_value();
  return out;
}

TrialResult run_bipartite(const Instance& inst, const RunOptions& options, const std::vector<double>& prefix_opt,
                          double& guarantee) {
  TrialResult out;
  BipartiteAssignment assign(inst.agents, options.c);
  guarantee = assign.guaranteed_ratio();
  int round = 0;
  for (ElementId u : inst.arrival) {
    const AssignmentOutcome o = assign.step(u);
    RoundRecord rec;
    rec.round = ++round;
    rec.element = inst.ground.name(u);
    rec.accepted = o.agent.has_value();
    rec.agent = o.agent;
    if (o.agent && o.decision.evicted) rec.evicted = inst.ground.name(*o.decision.evicted);
    rec.f_S = assign.total_value();
    rec.certified = rec.f_S;
    finish_round(rec, prefix_opt, static_cast<std::size_t>(round));
    if (options.check_every_round && !out.violation) out.violation = check_round(rec, guarantee);
    out.rounds.push_back(std::move(rec));
  }
  out.value = assign.total_value();
  out.certified = out.value;
  return out;
}

std::vector<double> bipartite_prefix_opt(const Instance& inst) {
  std::vector<const AgentSpec*> agents;
  for (const auto& a : inst.agents) agents.push_back(&a);
  std::vector<double> out;
  for (std::size_t i = 0; i <= inst.arrival.size(); ++i) {
    out.push_back(optimal_assignment_value(agents, std::span<const ElementId>(inst.arrival.data(), i)));
  }
  return out;
}

}  // namespace

std::string algorithm_kind_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kKUniform:
      return "k-uniform";
    case AlgorithmKind::kGeneral:
      return "general";
    case AlgorithmKind::kPartitionFrac:
      return "partition-frac";
    case AlgorithmKind::kBipartite:
      return "bipartite";
    case AlgorithmKind::kNonmonoGeneral:
      return "nonmono-general";
    case AlgorithmKind::kNonmonoUniform:
      return "nonmono-uniform";
    default:
      return "best-singleton";
  }
}

AlgorithmKind parse_algorithm_kind(const std::string& name) {
  for (AlgorithmKind k : {AlgorithmKind::kKUniform, AlgorithmKind::kGeneral, AlgorithmKind::kPartitionFrac,
                          AlgorithmKind::kBipartite, AlgorithmKind::kNonmonoGeneral, AlgorithmKind::kNonmonoUniform,
                          AlgorithmKind::kBestSingleton}) {
    if (algorithm_kind_name(k) == name) return k;
  }
  throw AlgorithmError("unknown algorithm '" + name + "'");
}

bool is_randomized(AlgorithmKind kind) {
  return kind == AlgorithmKind::kPartitionFrac || kind == AlgorithmKind::kNonmonoGeneral ||
         kind == AlgorithmKind::kNonmonoUniform;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(AlgorithmKind kind, const Objective& f, const Matroid& m,
                                                const RunOptions& options, std::uint64_t seed) {
  switch (kind) {
    case AlgorithmKind::kKUniform:
      if (!m.is_uniform()) throw AlgorithmError("the threshold rule needs a uniform matroid (or --k)");
      return make_uniform_dispatch(f, m);
    case AlgorithmKind::kGeneral:
      return std::make_unique<GeneralMatroidAlgorithm>(f, m, options.c);
    case AlgorithmKind::kBestSingleton: {
      int k = 0;
      if (m.is_uniform()) {
        k = m.as_uniform().k;
      } else {
        const ElementSet all = f.elements();
        if (all.size() <= kMaxEnumerationGround) k = m.rank(all);
      }
      return std::make_unique<BestSingletonAlgorithm>(f, m, k);
    }
    case AlgorithmKind::kPartitionFrac: {
      if (!m.is_partition()) throw AlgorithmError("the fractional algorithm needs a partition matroid");
      if (!(options.delta > 0.0 && options.delta <= 1.0)) throw AlgorithmError("delta must lie in (0, 1]");
      const int units = static_cast<int>(std::lround(1.0 / options.delta));
      return std::make_unique<PartitionFractionalAlgorithm>(f, m, units, seed);
    }
    case AlgorithmKind::kNonmonoGeneral: {
      auto rng = std::make_shared<std::mt19937_64>(seed);
      CoinSource coin = [rng]() { return std::bernoulli_distribution(0.5)(*rng); };
      return std::make_unique<NonmonoGeneralAlgorithm>(f, m, std::move(coin), options.c);
    }
    case AlgorithmKind::kNonmonoUniform:
      if (!m.is_uniform()) throw AlgorithmError("the sampled threshold rule needs a uniform matroid");
      return std::make_unique<NonmonoUniformAlgorithm>(f, m.as_uniform().k, seed);
    default:
      throw AlgorithmError("the bipartite rule runs through run_instance");
  }
}

RunReport run_instance(const Instance& inst, const RunOptions& options) {
  RunReport report;
  report.alg = algorithm_kind_name(options.alg);
  report.seed = options.seed;
  report.params = {{"c", options.c}, {"check_every_round", options.check_every_round}, {"delta", options.delta}};
  if (options.k) report.params["k"] = *options.k;
  const std::size_t n = inst.arrival.size();
  const bool want_opt = options.check_every_round || n <= kDefaultOptLimit;

  if (options.alg == AlgorithmKind::kBipartite) {
    if (inst.agents.empty()) throw InstanceError("the bipartite rule needs an \"agents\" list");
    if (options.check_every_round && n > 12) throw InstanceError("assignment optimum supports at most 12 arrivals");
    const std::vector<double> prefix = n <= 12 ? bipartite_prefix_opt(inst) : std::vector<double>{};
    double guarantee = 0.0;
    TrialResult t = run_bipartite(inst, options, prefix, guarantee);
    report.trials = 1;
    report.rounds = std::move(t.rounds);
    report.f_S = t.value;
    report.trial_values = {t.value};
    report.certified = t.certified;
    report.guaranteed_ratio = guarantee;
    if (!prefix.empty()) report.opt = prefix.back();
    report.violation = t.violation;
  } else {
    if (!inst.objective) throw InstanceError("instance has no top-level objective");
    std::optional<Matroid> override_m;
    if (options.k) {
      if (*options.k < 1) throw InstanceError("k must be positive");
      override_m = Matroid::uniform(*options.k);
    }
    const Matroid& m = override_m ? *override_m : inst.m();
    if (options.check_every_round && n > kMaxEnumerationGround) {
      throw InstanceError("per-round optimum supports at most 20 arrivals");
    }
    const std::vector<double> prefix =
        want_opt ? prefix_opt_values(inst.f(), m, inst.arrival) : std::vector<double>{};
    const int trials = is_randomized(options.alg) ? std::max(1, options.trials) : 1;
    report.trials = trials;
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    std::vector<double> guarantees(static_cast<std::size_t>(trials), 0.0);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int t = next++; t < trials; t = next++) {
        const auto idx = static_cast<std::size_t>(t);
        try {
          const std::uint64_t seed = trials == 1 ? options.seed : trial_seed(options.seed, t);
          results[idx] = run_single(inst, m, options, seed, t == 0, prefix, guarantees[idx]);
        } catch (...) {
          errors[idx] = std::current_exception();
        }
      }
    };
    int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, trials);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    double total = 0.0;
    double certified = 0.0;
    for (const auto& r : results) {
      report.trial_values.push_back(r.value);
      total += r.value;
      certified += r.certified;
      if (!report.violation && r.violation) report.violation = r.violation;
    }
    report.f_S = total / trials;
    report.certified = certified / trials;
    report.guaranteed_ratio = guarantees.front();
    report.rounds = std::move(results.front().rounds);
    if (!prefix.empty()) report.opt = prefix.back();
  }
  if (report.opt && *report.opt > 0.0) report.ratio = report.certified / *report.opt;
  report.params["trials"] = report.trials;
  return report;
}

std::string report_to_jsonl(const RunReport& report) {
  std::string out;
  for (const auto& r : report.rounds) {
    json j = {{"type", "round"},
              {"round", r.round},
              {"element", r.element},
              {"decision", r.accepted ? "accept" : "reject"},
              {"evicted", r.evicted ? json(*r.evicted) : json(nullptr)},
              {"f_S", r.f_S},
              {"certified", r.certified}};
    if (r.agent) j["agent"] = *r.agent;
    if (r.opt_prefix) j["opt_prefix"] = *r.opt_prefix;
    if (r.ratio) j["ratio"] = *r.ratio;
    out += j.dump() + "\n";
  }
  json fin = {{"type", "final"},
              {"alg", report.alg},
              {"params", report.params},
              {"seed", report.seed},
              {"trials", report.trials},
              {"trial_values", report.trial_values},
              {"f_S", report.f_S},
              {"certified", report.certified},
              {"guaranteed_ratio", report.guaranteed_ratio},
              {"opt", report.opt ? json(*report.opt) : json(nullptr)},
              {"ratio", report.ratio ? json(*report.ratio) : json(nullptr)},
              {"violation", report.violation ? json(*report.violation) : json(nullptr)}};
  out += fin.dump() + "\n";
  return out;
}

}  // namespace subfree
