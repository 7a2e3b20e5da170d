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

// Command-line front end: run, constants, adversary, verify, generate.
//
// Exit codes: 0 ok, 2 malformed instance or arguments, 3 invariant or ratio
// violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "subfree/adversaries.h"
#include "subfree/algorithms.h"
#include "subfree/alpha.h"
#include "subfree/generators.h"
#include "subfree/instance.h"
#include "subfree/runner.h"
#include "subfree/verify.h"

namespace {

using nlohmann::json;
using namespace subfree;

constexpr int kExitOk = 0;
constexpr int kExitInstance = 2;
constexpr int kExitViolation = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBFREE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable SUBFREE_SEED\n";
    }
  }
  return 0;
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write '" + path + "'");
  out << text;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct RunArgs {
  std::string alg = "general";
  std::string instance;
  std::string output;
  std::uint64_t seed = 0;
  std::optional<int> k;
  double c = 2.0;
  double delta = 0.02;
  bool check = false;
  int trials = 1;
  int threads = 0;
};

int cmd_run(const RunArgs& a) {
  const Instance inst = load_instance(a.instance);
  RunOptions opt;
  opt.alg = parse_algorithm_kind(a.alg);
  opt.seed = a.seed;
  opt.k = a.k;
  opt.c = a.c;
  opt.delta = a.delta;
  opt.check_every_round = a.check;
  opt.trials = a.trials;
  opt.threads = a.threads;
  const RunReport report = run_instance(inst, opt);
  emit(a.output, report_to_jsonl(report));
  if (report.violation) {
    json repro = {{"alg", a.alg},
                  {"seed", a.seed},
                  {"violation", *report.violation},
                  {"instance", instance_to_json(inst)}};
    std::cerr << "ratio violation; reproducer:\n" << canonical_dump(repro);
    return kExitViolation;
  }
  return kExitOk;
}

struct ConstantsArgs {
  std::vector<std::string> k = {"4", "5", "6", "7", "8", "9", "10", "inf"};
  int rho = 1;
  bool json_out = false;
};

int cmd_constants(const ConstantsArgs& a) {
  std::vector<std::optional<int>> ks;
  for (const std::string& item : a.k) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const std::size_t comma = item.find(',', start);
      const std::string tok = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!tok.empty()) {
        if (tok == "inf") {
          ks.emplace_back(std::nullopt);
        } else {
          std::size_t used = 0;
          int v = 0;
          try {
            v = std::stoi(tok, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != tok.size()) throw AlphaError("invalid k '" + tok + "'");
          ks.emplace_back(v);
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  std::string out;
  json rows = json::array();
  if (!a.json_out) out += a.rho == 3 ? "k\talpha_k\t1/alpha_k\tratio\n" : "k\talpha_k\t1/alpha_k\n";
  for (const auto& k : ks) {
    const AlphaConstant c = solve_alpha(k, a.rho);
    const std::string label = k ? std::to_string(*k) : "inf";
    if (a.json_out) {
      json row = {{"k", k ? json(*k) : json("inf")}, {"rho", a.rho}, {"alpha", c.value}, {"inverse", c.inverse()}};
      if (a.rho == 3) row["ratio"] = c.sampled_ratio();
      rows.push_back(row);
    } else {
      out += label + "\t" + fixed6(c.value) + "\t" + fixed6(c.inverse());
      if (a.rho == 3) out += "\t" + fixed6(c.sampled_ratio());
      out += "\n";
    }
  }
  if (a.json_out) out = canonical_dump(rows);
  emit("", out);
  return kExitOk;
}

struct AdversaryArgs {
  std::string family = "partition-monotone";
  double alpha = 3.0;
  double eps = 0.05;
  double delta = 0.2;
  int k = 100;
  std::optional<int> phases;
  std::string alg = "general";
  double c = 2.0;
  bool run_to_end = false;
  bool summary_only = false;
  std::string output;
};

int cmd_adversary(const AdversaryArgs& a) {
  AdversaryParams p;
  p.family = parse_family(a.family);
  p.alpha = a.alpha;
  p.epsilon = a.eps;
  p.delta = a.delta;
  p.k = a.k;
  p.phases = a.phases;
  p.stop_when_forced = !a.run_to_end;
  if (!alpha_in_range(p.family, p.alpha)) {
    std::cerr << "warning: alpha " << a.alpha << " is outside the range where " << a.family
              << " forces ratio 1/alpha; running anyway\n";
  }
  const AlgorithmKind kind = parse_algorithm_kind(a.alg);
  if (is_randomized(kind) || kind == AlgorithmKind::kBipartite) {
    throw AlgorithmError("adversaries drive deterministic single-agent rules only");
  }
  RunOptions opt;
  opt.c = a.c;
  auto driver = AdversaryDriver::create(p);
  const AdversaryOutcome o = run_adversary(*driver, [&](const Objective& f, const Matroid& m) {
    if (kind == AlgorithmKind::kKUniform) {
      if (!m.is_uniform()) throw AlgorithmError("the threshold rule needs the uniform family");
      return std::unique_ptr<OnlineAlgorithm>(std::make_unique<KUniformAlgorithm>(f, m));
    }
    if (kind == AlgorithmKind::kBestSingleton) {
      return std::unique_ptr<OnlineAlgorithm>(
          std::make_unique<BestSingletonAlgorithm>(f, m, m.is_uniform() ? m.as_uniform().k : 0));
    }
    return make_algorithm(kind, f, m, opt, 0);
  });
  std::string out;
  if (!a.summary_only) {
    for (const auto& e : o.events) {
      json j = {{"type", "round"},
                {"round", e.round},
                {"element", e.element},
                {"decision", e.accepted ? "accept" : "reject"},
                {"evicted", e.evicted ? json(*e.evicted) : json(nullptr)},
                {"f_S", e.f_S},
                {"opt", e.opt},
                {"ratio", e.ratio}};
      out += j.dump() + "\n";
    }
  }
  json fin = {{"type", "final"},
              {"family", o.family},
              {"alg", o.algorithm},
              {"alpha", o.alpha},
              {"alpha_in_range", o.alpha_in_range},
              {"min_ratio", o.min_ratio},
              {"final_ratio", o.final_ratio},
              {"forced", o.forced()},
              {"rounds", o.rounds},
              {"phases", o.phases},
              {"reason", o.reason},
              {"violations", o.violations}};
  if (p.family == AdversaryFamily::kUniform) {
    fin["params"] = {{"epsilon", a.eps}, {"delta", a.delta}, {"k", a.k}};
    if (a.phases) fin["params"]["phases"] = *a.phases;
  }
  out += fin.dump() + "\n";
  emit(a.output, out);
  std::cerr << "min ratio " << fixed6(o.min_ratio) << " (1/alpha = " << fixed6(1.0 / o.alpha) << "), "
            << o.rounds << " rounds, stopped: " << o.reason << "\n";
  if (!o.violations.empty()) {
    for (const auto& v : o.violations) std::cerr << "violation: " << v << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int cases = 200;
};

int cmd_verify(const VerifyArgs& a) {
  const std::vector<SuiteResult> results = run_suites(a.suite, a.seed, a.cases);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << r.name << ": cases=" << r.cases << " checks=" << r.checks << " failures=" << r.failures.size() << " "
              << (r.ok() ? "PASS" : "FAIL") << "\n";
    for (const auto& f : r.failures) std::cerr << "reproducer: " << f << "\n";
    ok = ok && r.ok();
  }
  return ok ? kExitOk : kExitViolation;
}

struct GenerateArgs {
  std::string kind = "monotone";
  std::string matroid = "any";
  int n = 8;
  int agents = 2;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_generate(const GenerateArgs& a) {
  gen::Rng rng(a.seed);
  gen::MatroidMix mix = gen::MatroidMix::kAny;
  if (a.matroid == "uniform") mix = gen::MatroidMix::kUniform;
  else if (a.matroid == "partition") mix = gen::MatroidMix::kPartition;
  else if (a.matroid == "graphic") mix = gen::MatroidMix::kGraphic;
  else if (a.matroid != "any") throw InstanceError("unknown matroid mix '" + a.matroid + "'");
  Instance inst;
  if (a.kind == "monotone") {
    inst = gen::random_monotone_instance(a.n, rng, mix);
  } else if (a.kind == "nonmonotone") {
    inst = gen::random_nonmonotone_instance(a.n, rng, mix);
  } else if (a.kind == "bipartite") {
    inst = gen::random_bipartite_instance(a.n, a.agents, rng);
  } else {
    throw InstanceError("unknown instance kind '" + a.kind + "'");
  }
  inst.metadata = {{"generator", a.kind}, {"seed", a.seed}};
  emit(a.output, canonical_dump(instance_to_json(inst)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online submodular maximization with free disposal under matroid constraints"};
  app.require_subcommand(1);
  const std::uint64_t seed0 = default_seed();

  RunArgs run;
  run.seed = seed0;
  auto* run_cmd = app.add_subcommand("run", "Replay an instance through an online rule");
  run_cmd->add_option("--alg", run.alg, "k-uniform|general|partition-frac|bipartite|nonmono-general|"
                                        "nonmono-uniform|best-singleton")
      ->required();
  run_cmd->add_option("--instance", run.instance, "Instance JSON file")->required();
  run_cmd->add_option("--seed", run.seed, "Seed (default: SUBFREE_SEED or 0)");
  run_cmd->add_option("--k", run.k, "Replace the matroid by a k-uniform one");
  run_cmd->add_option("--c", run.c, "Swap constant of the exchange rule");
  run_cmd->add_option("--delta", run.delta, "Mass granularity of the fractional rule");
  run_cmd->add_flag("--check-every-round", run.check, "Assert the guaranteed ratio against prefix OPT");
  run_cmd->add_option("--trials", run.trials, "Seeded trials for randomized rules");
  run_cmd->add_option("--threads", run.threads, "Worker threads for trials (0: all cores)");
  run_cmd->add_option("--output,-o", run.output, "Report file (default stdout)");

  ConstantsArgs constants;
  auto* const_cmd = app.add_subcommand("constants", "Threshold constants alpha_k");
  const_cmd->add_option("--k", constants.k, "List of k values or 'inf' (comma separated)");
  const_cmd->add_option("--rho", constants.rho, "1 or 3")->check(CLI::IsMember({1, 3}));
  const_cmd->add_flag("--json", constants.json_out, "Emit JSON instead of a table");

  AdversaryArgs adv;
  auto* adv_cmd = app.add_subcommand("adversary", "Run an adaptive hardness construction");
  adv_cmd->add_option("--family", adv.family, "uniform|partition-monotone|partition-general")->required();
  adv_cmd->add_option("--alpha", adv.alpha, "Target ratio 1/alpha")->required();
  adv_cmd->add_option("--eps", adv.eps, "Weight growth of the interval family");
  adv_cmd->add_option("--delta", adv.delta, "Phase fraction of the interval family");
  adv_cmd->add_option("--k", adv.k, "Rank of the interval family");
  adv_cmd->add_option("--phases", adv.phases, "Override the interval family's phase count");
  adv_cmd->add_option("--alg", adv.alg, "general|k-uniform|best-singleton");
  adv_cmd->add_option("--c", adv.c, "Swap constant of the exchange rule");
  adv_cmd->add_flag("--run-to-end", adv.run_to_end, "Keep going after the ratio is forced");
  adv_cmd->add_flag("--summary-only", adv.summary_only, "Print only the final record");
  adv_cmd->add_option("--output,-o", adv.output, "Transcript file (default stdout)");

  VerifyArgs verify;
  verify.seed = seed0;
  auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
  verify_cmd->add_option("--suite", verify.suite, "lemmas|rounding|sampling|all")
      ->check(CLI::IsMember({"lemmas", "rounding", "sampling", "all"}));
  verify_cmd->add_option("--seed", verify.seed, "Seed (default: SUBFREE_SEED or 0)");
  verify_cmd->add_option("--cases", verify.cases, "Random cases per suite");

  GenerateArgs generate;
  generate.seed = seed0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random instance");
  gen_cmd->add_option("--kind", generate.kind, "monotone|nonmonotone|bipartite");
  gen_cmd->add_option("--matroid", generate.matroid, "any|uniform|partition|graphic");
  gen_cmd->add_option("--n", generate.n, "Number of elements");
  gen_cmd->add_option("--agents", generate.agents, "Agents for bipartite instances");
  gen_cmd->add_option("--seed", generate.seed, "Seed (default: SUBFREE_SEED or 0)");
  gen_cmd->add_option("--output,-o", generate.output, "Instance file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; malformed command lines share the input-error code.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInstance;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run);
    if (const_cmd->parsed()) return cmd_constants(constants);
    if (adv_cmd->parsed()) return cmd_adversary(adv);
    if (verify_cmd->parsed()) return cmd_verify(verify);
    if (gen_cmd->parsed()) return cmd_generate(generate);
  } catch (const InstanceError& e) {
    std::cerr << "instance error: " << e.what() << "\n";
    return kExitInstance;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInstance;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitOk;
}
