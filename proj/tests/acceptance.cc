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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "subfree/adversaries.h"
#include "subfree/algorithms.h"
#include "subfree/alpha.h"
#include "subfree/bipartite.h"
#include "subfree/generators.h"
#include "subfree/nonmonotone.h"
#include "subfree/oracle.h"
#include "subfree/verify.h"

namespace subfree {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Verdict constants() {
  Verdict v;
  const auto start = Clock::now();
  const AlphaConstant inf = solve_alpha(std::nullopt);
  const AlphaConstant a4 = solve_alpha(4);
  if (std::fabs(inf.value - 3.14619) > 1e-4) v.fail("alpha_inf = " + fmt(inf.value, 10));
  if (!(a4.value > 3.37)) v.fail("alpha_4 = " + fmt(a4.value, 10));
  if (!(a4.inverse() > 0.2959)) v.fail("1/alpha_4 = " + fmt(a4.inverse(), 10));
  double prev = a4.value;
  for (int k = 5; k <= 100; ++k) {
    const double cur = solve_alpha(k).value;
    if (!(cur < prev)) v.fail("alpha not decreasing at k = " + std::to_string(k));
    prev = cur;
  }
  const double t = seconds_since(start);
  if (t >= 1.0) v.fail("took " + fmt(t) + " s");
  if (v.pass) {
    v.detail = "alpha_inf=" + fmt(inf.value, 8) + " alpha_4=" + fmt(a4.value, 8) + " 1/alpha_4=" +
               fmt(a4.inverse(), 6) + " time=" + fmt(t, 3) + "s";
  }
  return v;
}

struct MonotoneRun {
  Instance inst;
  std::optional<Matroid> uniform;
  double param = 2.0;
  MonitoredRule rule = MonitoredRule::kGeneral;
  const Matroid& m() const { return uniform ? *uniform : inst.m(); }
};

std::vector<MonotoneRun> exchange_runs() {
  std::vector<MonotoneRun> runs;
  gen::Rng rng(20260001);
  for (int i = 0; i < 200; ++i) {
    const int n = 4 + i % 9;
    MonotoneRun r{gen::random_monotone_instance(n, rng), std::nullopt, 2.0, MonitoredRule::kGeneral};
    runs.push_back(std::move(r));
  }
  return runs;
}

std::vector<MonotoneRun> threshold_runs() {
  std::vector<MonotoneRun> runs;
  gen::Rng rng(20260002);
  for (int i = 0; i < 200; ++i) {
    const int n = 4 + i % 9;
    const int k = 4 + i % 5;
    MonotoneRun r{gen::random_monotone_instance(n, rng, gen::MatroidMix::kUniform), Matroid::uniform(k),
                  solve_alpha(k).value, MonitoredRule::kKUniform};
    runs.push_back(std::move(r));
  }
  return runs;
}

// f(S) against the prefix optimum after every round.
Verdict prefix_ratio(const std::vector<MonotoneRun>& runs, bool threshold) {
  Verdict v;
  const auto start = Clock::now();
  double worst = 1e300;
  long rounds = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const MonotoneRun& r = runs[i];
    std::unique_ptr<OnlineAlgorithm> alg;
    if (threshold) {
      alg = std::make_unique<KUniformAlgorithm>(r.inst.f(), r.m());
    } else {
      alg = std::make_unique<GeneralMatroidAlgorithm>(r.inst.f(), r.m());
    }
    const double ratio = alg->guaranteed_ratio();
    const std::vector<double> opt = prefix_opt_values(r.inst.f(), r.m(), r.inst.arrival);
    for (std::size_t t = 0; t < r.inst.arrival.size(); ++t) {
      alg->process(r.inst.arrival[t]);
      ++rounds;
      const double value = alg->solution_value();
      if (opt[t + 1] > 0) worst = std::min(worst, value / opt[t + 1]);
      if (value < ratio * opt[t + 1] - 1e-9) {
        v.fail("instance " + std::to_string(i) + " round " + std::to_string(t + 1) + ": f(S)=" + fmt(value) +
               " OPT=" + fmt(opt[t + 1]));
      }
    }
  }
  const double t = seconds_since(start);
  if (!threshold && t >= 60.0) v.fail("took " + fmt(t) + " s");
  if (v.pass) {
    v.detail = std::to_string(runs.size()) + " instances, " + std::to_string(rounds) +
               " rounds, worst f(S)/OPT=" + fmt(worst) + " time=" + fmt(t, 3) + "s";
  }
  return v;
}

Verdict lemma_monitors(const std::vector<MonotoneRun>& a, const std::vector<MonotoneRun>& b) {
  Verdict v;
  int runs = 0, changes = 0;
  for (const auto* set : {&a, &b}) {
    for (const MonotoneRun& r : *set) {
      LemmaReport rep = run_with_lemma_checks(r.inst.f(), r.m(), r.inst.arrival, r.rule, r.param, 12);
      ++runs;
      changes += rep.changes;
      if (!rep.ok()) v.fail("run " + std::to_string(runs) + ": " + rep.violations.front());
    }
  }
  if (v.pass) v.detail = std::to_string(runs) + " runs, " + std::to_string(changes) + " set changes monitored";
  return v;
}

Verdict fractional() {
  Verdict v;
  gen::Rng rng(20260005);
  double worst_margin = 1e300;
  for (int i = 0; i < 20; ++i) {
    Instance inst = gen::random_monotone_instance(4 + i % 5, rng, gen::MatroidMix::kPartition);
    FractionalCheck c = check_fractional_run(inst.f(), inst.m(), inst.arrival, 50, 1000 + i, 10000);
    worst_margin = std::min(worst_margin, c.rounding_mean - c.soft);
    if (!c.ok()) v.fail("instance " + std::to_string(i) + ": " + c.violations.front());
  }
  if (v.pass) v.detail = "20 partition instances, Delta=0.02, 1e4 roundings each, min(mean - soft)=" + fmt(worst_margin);
  return v;
}

Verdict domination() {
  Verdict v;
  gen::Rng rng(20260006);
  int checks = 0;
  for (int i = 0; i < 500; ++i) {
    Ground ground;
    auto elems = gen::name_elements(ground, 1 + i % 8);
    Objective g = gen::random_submodular_table(elems, rng, i % 2 == 1);
    for (int k = 0; k <= static_cast<int>(elems.size()); ++k) {
      DominationCheck c = check_ckp_domination(g, k);
      ++checks;
      if (!c.holds) v.fail("table " + std::to_string(i) + " k=" + std::to_string(k));
    }
  }
  if (v.pass) v.detail = "500 tables, " + std::to_string(checks) + " (table, k) pairs";
  return v;
}

AlgorithmFactory exchange_factory() {
  return [](const Objective& f, const Matroid& m) { return std::make_unique<GeneralMatroidAlgorithm>(f, m); };
}

Verdict partition_monotone() {
  Verdict v;
  std::string summary;
  for (double alpha : {2.5, 3.0, 3.5, 3.9}) {
    auto a = monotone_weights(alpha);
    if (!(a.back() < 0.0L)) v.fail("no negative weight at alpha=" + fmt(alpha));
    AdversaryParams p;
    p.family = AdversaryFamily::kPartitionMonotone;
    p.alpha = alpha;
    p.stop_when_forced = false;
    auto d = AdversaryDriver::create(p);
    AdversaryOutcome out = run_adversary(*d, exchange_factory());
    if (!out.violations.empty()) v.fail(out.violations.front());
    if (!(out.min_ratio <= 1.0 / alpha + 1e-9)) v.fail("alpha=" + fmt(alpha) + " min ratio " + fmt(out.min_ratio));
    for (const AdversaryEvent& ev : out.events) {
      if (ev.ratio < 0.25 - 1e-9) v.fail("alpha=" + fmt(alpha) + " round " + std::to_string(ev.round));
    }
    summary += " alpha=" + fmt(alpha) + ":n=" + std::to_string(a.size()) + ",min=" + fmt(out.min_ratio);
  }
  if (v.pass) v.detail = summary.substr(1);
  return v;
}

Verdict partition_general() {
  Verdict v;
  std::string summary;
  for (double alpha : {2.0, 2.5}) {
    if (!(general_discriminant(alpha) < 0.0)) v.fail("discriminant nonnegative at alpha=" + fmt(alpha));
    const AlgorithmFactory singleton = [](const Objective& f, const Matroid& m) {
      return std::make_unique<BestSingletonAlgorithm>(f, m);
    };
    for (const AlgorithmFactory& make : {exchange_factory(), singleton}) {
      AdversaryParams p;
      p.family = AdversaryFamily::kPartitionGeneral;
      p.alpha = alpha;
      p.stop_when_forced = false;
      auto d = AdversaryDriver::create(p);
      AdversaryOutcome out = run_adversary(*d, make);
      if (!d->terminated() || out.reason == "phase bound reached") v.fail("driver did not terminate");
      if (!out.violations.empty()) v.fail(out.violations.front());
      if (!(out.min_ratio <= 1.0 / alpha + 1e-9)) {
        v.fail(out.algorithm + " alpha=" + fmt(alpha) + " min ratio " + fmt(out.min_ratio));
      }
      summary += " " + out.algorithm + "@" + fmt(alpha) + ":" + fmt(out.min_ratio);
    }
  }
  if (v.pass) v.detail = summary.substr(1);
  return v;
}

Verdict uniform_hardness() {
  Verdict v;
  const auto start = Clock::now();
  AdversaryParams p;
  p.family = AdversaryFamily::kUniform;
  p.alpha = 3.0;
  p.epsilon = 0.05;
  p.delta = 0.2;
  p.k = 200;
  p.stop_when_forced = false;
  auto d = AdversaryDriver::create(p);
  AdversaryOutcome out = run_adversary(*d, [](const Objective& f, const Matroid& m) {
    return std::make_unique<KUniformAlgorithm>(f, m);
  });
  const double t = seconds_since(start);
  if (!out.violations.empty()) v.fail(out.violations.front());
  if (!(out.min_ratio <= 1.0 / 3.0 + 1e-9)) v.fail("min ratio " + fmt(out.min_ratio));
  if (t >= 120.0) v.fail("took " + fmt(t) + " s");
  if (v.pass) {
    v.detail = "k=200, " + std::to_string(out.rounds) + " rounds, " + std::to_string(out.phases) +
               " phases, min ratio " + fmt(out.min_ratio) + " time=" + fmt(t, 3) + "s";
  }
  return v;
}

// Exact expectation over every coin sequence of the randomized exchange rule.
double coin_expectation(const Instance& inst) {
  int coins = 0;
  {
    auto probe = [&coins]() {
      ++coins;
      return false;
    };
    NonmonoGeneralAlgorithm alg(inst.f(), inst.m(), probe);
    for (ElementId u : inst.arrival) alg.process(u);
  }
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << coins); ++mask) {
    int calls = 0;
    auto coin = [&calls, mask]() { return ((mask >> calls++) & 1u) != 0; };
    NonmonoGeneralAlgorithm alg(inst.f(), inst.m(), coin);
    for (ElementId u : inst.arrival) alg.process(u);
    total += alg.solution_value();
  }
  return total / (1u << coins);
}

Verdict nonmonotone() {
  Verdict v;
  gen::Rng rng(20260010);
  double worst_general = 1e300, worst_uniform = 1e300;
  int nonmono = 0;
  for (int i = 0; i < 100; ++i) {
    Instance inst = gen::random_nonmonotone_instance(3 + i % 6, rng);
    if (!inst.f().is_monotone()) ++nonmono;
    const double expect = coin_expectation(inst);
    const double opt = brute_force_opt(inst.f(), inst.m(), inst.arrival).value;
    if (opt > 0) worst_general = std::min(worst_general, expect / opt);
    if (expect < opt / 16.0 - 1e-9) v.fail("general instance " + std::to_string(i));
  }
  for (int i = 0; i < 120; ++i) {
    const int k = 4 + i % 3;
    Ground ground;
    auto elems = gen::name_elements(ground, 5 + i % 4);
    Objective f = gen::random_submodular_table(elems, rng, true);
    std::shuffle(elems.begin(), elems.end(), rng);
    NonmonoUniformAlgorithm alg(f, k, static_cast<std::uint64_t>(i));
    for (ElementId u : elems) alg.process(u);
    const double expect = alg.certified_value();
    const double opt = brute_force_opt(f, Matroid::uniform(k), elems).value;
    const double bound = solve_alpha(k, 3).inverse() * (2.0 / 3.0);
    if (opt > 0) worst_uniform = std::min(worst_uniform, expect / opt / bound);
    if (expect < bound * opt - 1e-9) v.fail("uniform instance " + std::to_string(i) + " k=" + std::to_string(k));
  }
  if (v.pass) {
    v.detail = "100 exchange runs (" + std::to_string(nonmono) + " non-monotone), worst E/OPT=" +
               fmt(worst_general) + "; 120 slot runs k=4..6, worst (E/OPT)/bound=" + fmt(worst_uniform);
  }
  return v;
}

Verdict bipartite() {
  Verdict v;
  gen::Rng rng(20260011);
  double worst = 1e300;
  for (int i = 0; i < 100; ++i) {
    Instance inst = gen::random_bipartite_instance(4 + i % 7, 2 + i % 2, rng);
    BipartiteAssignment b(inst.agents);
    for (ElementId u : inst.arrival) b.step(u);
    std::vector<const AgentSpec*> agents;
    for (const AgentSpec& a : inst.agents) agents.push_back(&a);
    const double opt = optimal_assignment_value(agents, inst.arrival);
    if (opt > 0) worst = std::min(worst, b.total_value() / opt);
    if (b.total_value() < b.guaranteed_ratio() * opt - 1e-9) v.fail("instance " + std::to_string(i));
  }
  if (v.pass) v.detail = "100 instances, worst total/OPT=" + fmt(worst);
  return v;
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return "<popen failed>";
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return out + "\n<status " + std::to_string(status) + ">";
}

std::string slurp(const std::filesystem::path& p) {
  FILE* f = std::fopen(p.c_str(), "rb");
  if (!f) return "<missing>";
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  std::fclose(f);
  return out;
}

Verdict determinism() {
  Verdict v;
  const std::string cli = SUBFREE_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() / ("subfree_accept_" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  const std::string mono = (dir / "mono.json").string();
  const std::string part = (dir / "part.json").string();
  const std::string nonmono = (dir / "nonmono.json").string();
  const std::string bip = (dir / "bip.json").string();
  const std::vector<std::string> commands = {
      cli + " generate --kind monotone --n 9 --seed 5 -o " + mono,
      cli + " generate --kind monotone --matroid partition --n 7 --seed 6 -o " + part,
      cli + " generate --kind nonmonotone --matroid uniform --n 6 --seed 7 -o " + nonmono,
      cli + " generate --kind bipartite --n 8 --agents 3 --seed 8 -o " + bip,
      cli + " generate --kind monotone --n 6 --seed 9",
      cli + " run --alg general --instance " + mono + " --seed 1 --check-every-round",
      cli + " run --alg k-uniform --k 4 --instance " + mono + " --seed 1",
      cli + " run --alg best-singleton --instance " + mono + " --seed 1",
      cli + " run --alg partition-frac --instance " + part + " --seed 3 --trials 8 --threads 4",
      cli + " run --alg nonmono-general --instance " + nonmono + " --seed 4 --trials 4 --check-every-round",
      cli + " run --alg nonmono-uniform --instance " + nonmono + " --seed 4 --trials 4",
      cli + " run --alg bipartite --instance " + bip + " --seed 2 --check-every-round",
      cli + " constants",
      cli + " constants --rho 3 --k 4,9,inf --json",
      cli + " adversary --family partition-monotone --alpha 3.5",
      cli + " adversary --family partition-general --alpha 2.5 --alg best-singleton --run-to-end",
      cli + " adversary --family uniform --alpha 3 --k 20 --alg k-uniform",
      cli + " verify --suite all --seed 3 --cases 10",
  };
  // The generated files feed later commands, so each pass regenerates them
  // and their bytes are compared too.
  std::vector<std::string> first, second;
  for (auto* sink : {&first, &second}) {
    for (const std::string& c : commands) sink->push_back(capture(c));
    for (const auto& f : {mono, part, nonmono, bip}) sink->push_back(slurp(f));
  }
  int differing = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i] != second[i]) {
      ++differing;
      v.fail(i < commands.size() ? "output differs: " + commands[i] : "file differs");
    }
    if (first[i].find("<status 0>") == std::string::npos && i < commands.size()) {
      v.fail("nonzero exit: " + commands[i]);
    }
  }
  std::filesystem::remove_all(dir);
  if (v.pass) v.detail = std::to_string(commands.size()) + " commands and 4 files byte-identical across two passes";
  return v;
}

}  // namespace
}  // namespace subfree

int main() {
  using namespace subfree;
  const auto exchange = exchange_runs();
  const auto threshold = threshold_runs();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"threshold constants", constants},
      {"exchange rule per-prefix ratio 1/4", [&] { return prefix_ratio(exchange, false); }},
      {"threshold rule per-prefix ratio 1/alpha_k", [&] { return prefix_ratio(threshold, true); }},
      {"lemma monitors on every run", [&] { return lemma_monitors(exchange, threshold); }},
      {"fractional rule and online rounding", fractional},
      {"sampling without replacement domination", domination},
      {"partition-monotone hardness", partition_monotone},
      {"partition-general hardness", partition_general},
      {"interval hardness at k=200", uniform_hardness},
      {"non-monotone rules in expectation", nonmonotone},
      {"bipartite assignment ratio 1/(alpha+1)", bipartite},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << v.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
