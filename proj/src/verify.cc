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

#include "subfree/verify.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "subfree/algorithms.h"
#include "subfree/alpha.h"
#include "subfree/fractional.h"
#include "subfree/generators.h"
#include "subfree/oracle.h"
#include "subfree/runner.h"
#include "subfree/tracker.h"

namespace subfree {
namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double tolerance(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

std::string at_round(int round) { return "round " + std::to_string(round) + ": "; }

// Maximum of the frozen weights over independent subsets of the history.
double best_hat_weight(const OnlineState& st) {
  const auto& history = st.history();
  std::vector<double> hat;
  for (ElementId v : history) hat.push_back(st.hat_weight(v));
  double best = 0.0;
  for (std::uint32_t mask : st.matroid().enumerate_independent_masks(history)) {
    double total = 0.0;
    for (std::size_t i = 0; i < history.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) total += hat[i];
    }
    best = std::max(best, total);
  }
  return best;
}

std::string case_tag(const std::string& suite, std::uint64_t seed, int index) {
  return suite + " seed=" + std::to_string(seed) + " case=" + std::to_string(index) + ": ";
}

}  // namespace

LemmaReport run_with_lemma_checks(const Objective& f, const Matroid& m, std::span<const ElementId> arrival,
                                  MonitoredRule rule, double param, std::size_t greedy_limit) {
  LemmaReport rep;
  OnlineState st(f, m);
  const bool threshold_rule = rule == MonitoredRule::kKUniform;
  const double guarantee = threshold_rule ? 1.0 / param : (param == 2.0 ? 0.25 : 0.0);
  std::vector<double> prefix_opt;
  if (arrival.size() <= kMaxEnumerationGround) prefix_opt = prefix_opt_values(f, m, arrival);
  const double empty = f.empty_value();
  double theta = 0.0;
  for (ElementId u : arrival) {
    const int round = ++rep.rounds;
    const double f_old = st.value();
    std::map<ElementId, double> ws_old;
    for (ElementId v : st.feasible()) ws_old[v] = st.w_S(v);
    std::map<ElementId, double> frozen_old;
    for (ElementId v : st.history()) {
      if (auto fw = st.frozen_weight(v)) frozen_old[v] = *fw;
    }

    const Decision d = threshold_rule ? step_k_uniform(st, u, param) : step_general_matroid(st, u, param);
    const double f_new = st.value();
    if (d.accepted) {
      ++rep.changes;
      if (!(f_new > f_old - 1e-12)) {
        rep.violations.push_back(at_round(round) + "f(S) did not increase: " + num(f_old) + " -> " + num(f_new));
      }
    } else if (std::abs(f_new - f_old) > 1e-12) {
      rep.violations.push_back(at_round(round) + "S changed on a rejection");
    }

    const double sum_w = st.history_weight();
    const double gain = st.history_value() - empty;
    if (std::abs(sum_w - gain) > tolerance(gain)) {
      rep.violations.push_back(at_round(round) + "sum of w over A " + num(sum_w) + " != f(A) - f(empty) " + num(gain));
    }
    for (const auto& [v, w] : ws_old) {
      if (st.in_feasible(v) && st.w_S(v) < w - tolerance(w)) {
        rep.violations.push_back(at_round(round) + "w_S decreased for a survivor");
      }
    }
    for (const auto& [v, w] : frozen_old) {
      if (st.frozen_weight(v) != w) rep.violations.push_back(at_round(round) + "a frozen weight changed");
    }

    if (threshold_rule) {
      const double theta_new = param * st.feasible_w_S() - sum_w;
      if (theta_new < theta - tolerance(theta)) {
        rep.violations.push_back(at_round(round) + "threshold decreased: " + num(theta) + " -> " + num(theta_new));
      }
      theta = theta_new;
      if (d.evicted) {
        const double bound = param / (param - 1.0) * d.evicted_weight;
        if (!(d.weight > bound - 1e-12 * std::max(1.0, bound))) {
          rep.violations.push_back(at_round(round) + "replacement weight " + num(d.weight) + " <= " + num(bound));
        }
      }
    } else {
      const double bound = param / (param - 1.0) * st.feasible_weight();
      if (sum_w > bound + tolerance(bound)) {
        rep.violations.push_back(at_round(round) + "w(A) " + num(sum_w) + " > c/(c-1) w(S) " + num(bound));
      }
      if (st.history().size() <= greedy_limit) {
        double on_s = 0.0;
        for (ElementId v : st.feasible()) on_s += st.hat_weight(v);
        const double best = best_hat_weight(st);
        if (std::abs(on_s - best) > tolerance(best)) {
          rep.violations.push_back(at_round(round) + "S is not greedy-optimal: " + num(on_s) + " vs " + num(best));
        }
      }
    }

    if (static_cast<std::size_t>(round) < prefix_opt.size()) {
      const double opt = prefix_opt[static_cast<std::size_t>(round)];
      if (opt > 0.0) rep.min_ratio = std::min(rep.min_ratio, f_new / opt);
      if (f_new < guarantee * opt - 1e-9) {
        rep.violations.push_back(at_round(round) + "ratio " + num(f_new / opt) + " below " + num(guarantee));
      }
    }
  }
  return rep;
}

FractionalCheck check_fractional_run(const Objective& f, const Matroid& m, std::span<const ElementId> arrival,
                                     int units_per_one, std::uint64_t seed, int samples, double ratio_denominator) {
  FractionalCheck out;
  const double alpha = solve_alpha(std::nullopt, 1).value;
  FractionalState st(f, m, units_per_one, alpha, seed);
  std::map<int, double> theta;
  int round = 0;
  for (ElementId u : arrival) {
    ++round;
    const FractionalTrace tr = st.step(u);
    for (int part : st.parts()) {
      const double now = alpha * st.part_live_weight(part) - st.part_history_weight(part);
      auto it = theta.find(part);
      if (it != theta.end()) {
        const double slack = alpha * st.max_unit_weight() * st.delta() * std::max(1, tr.units_removed);
        if (now < it->second - slack - 1e-12) {
          out.violations.push_back(at_round(round) + "part threshold fell by more than the discretization slack");
        }
      }
      theta[part] = now;
    }
  }
  const FractionalVector mass = st.mass();
  out.soft = soft_value(f, mass);
  out.opt = brute_force_opt(f, m, arrival).value;
  out.slack = alpha * st.delta() * st.max_unit_weight() * static_cast<double>(st.parts().size());
  if (out.soft < out.opt / ratio_denominator - out.slack - 1e-12) {
    out.violations.push_back("soft value " + num(out.soft) + " < OPT/" + num(ratio_denominator) + " - slack (OPT " +
                             num(out.opt) + ", slack " + num(out.slack) + ")");
  }
  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    st.resample(trial_seed(seed, s));
    const ElementSet r = st.round();
    if (!m.is_independent(r)) {
      out.violations.push_back("rounded set is dependent");
      break;
    }
    const double v = f.value(r);
    const double delta = v - mean;
    mean += delta / (s + 1);
    m2 += delta * (v - mean);
  }
  out.rounding_mean = mean;
  out.rounding_std_error = samples > 1 ? std::sqrt(m2 / (samples - 1) / samples) : 0.0;
  if (mean < out.soft - 3.0 * out.rounding_std_error - 1e-9) {
    out.violations.push_back("rounding mean " + num(mean) + " < soft value " + num(out.soft) + " - 3 sigma (" +
                             num(out.rounding_std_error) + ")");
  }
  return out;
}

SuiteResult verify_lemmas(std::uint64_t seed, int cases) {
  SuiteResult res;
  res.name = "lemmas";
  for (int i = 0; i < cases; ++i) {
    gen::Rng rng(trial_seed(seed, i));
    const int n = std::uniform_int_distribution<int>(1, 10)(rng);
    const Instance general = gen::random_monotone_instance(n, rng);
    const LemmaReport a = run_with_lemma_checks(general.f(), general.m(), general.arrival, MonitoredRule::kGeneral, 2.0);
    const int k = std::uniform_int_distribution<int>(4, 8)(rng);
    const Instance uniform = gen::random_monotone_instance(n, rng, gen::MatroidMix::kUniform);
    const Matroid mk = Matroid::uniform(k);
    const LemmaReport b = run_with_lemma_checks(uniform.f(), mk, uniform.arrival, MonitoredRule::kKUniform,
                                                solve_alpha(k, 1).value);
    ++res.cases;
    res.checks += a.rounds + b.rounds;
    for (const auto& v : a.violations) res.failures.push_back(case_tag("lemmas/general", seed, i) + v);
    for (const auto& v : b.violations) res.failures.push_back(case_tag("lemmas/k-uniform", seed, i) + v);
  }
  return res;
}

SuiteResult verify_rounding(std::uint64_t seed, int cases) {
  SuiteResult res;
  res.name = "rounding";
  for (int i = 0; i < cases; ++i) {
    gen::Rng rng(trial_seed(seed, i));
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const Instance inst = gen::random_monotone_instance(n, rng, gen::MatroidMix::kPartition, gen::ObjectiveMix::kCoverage);
    const FractionalCheck fc = check_fractional_run(inst.f(), inst.m(), inst.arrival, 50, trial_seed(seed, i), 2000);
    for (const auto& v : fc.violations) res.failures.push_back(case_tag("rounding/fractional", seed, i) + v);

    Ground g;
    const auto elems = gen::name_elements(g, 4);
    const Objective table = gen::random_submodular_table(elems, rng, false);
    std::vector<ElementId> o;
    FractionalVector a;
    for (ElementId e : elems) {
      if (std::bernoulli_distribution(0.5)(rng)) o.push_back(e);
      if (std::bernoulli_distribution(0.7)(rng)) a[e] = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    }
    const SoftBoundCheck sb = check_f_vs_fhat(table, o, a);
    if (!sb.holds) {
      res.failures.push_back(case_tag("rounding/soft-bound", seed, i) + "f(O) exceeds soft bound by " + num(-sb.slack));
    }
    ++res.cases;
    res.checks += 2;
  }
  return res;
}

SuiteResult verify_sampling(std::uint64_t seed, int cases) {
  SuiteResult res;
  res.name = "sampling";
  for (int i = 0; i < cases; ++i) {
    gen::Rng rng(trial_seed(seed, i));
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    Ground g;
    const auto elems = gen::name_elements(g, n);
    const bool nonmono = std::bernoulli_distribution(0.5)(rng);
    const Objective table = gen::random_submodular_table(elems, rng, nonmono);
    for (int k = 0; k <= n; ++k) {
      const DominationCheck dc = check_ckp_domination(table, k);
      ++res.checks;
      if (!dc.holds) {
        res.failures.push_back(case_tag("sampling", seed, i) + "k=" + std::to_string(k) + " without replacement " +
                               num(dc.without_replacement) + " < independent " + num(dc.independent));
      }
    }
    ++res.cases;
  }
  return res;
}

std::vector<SuiteResult> run_suites(const std::string& suite, std::uint64_t seed, int cases) {
  std::vector<SuiteResult> out;
  const bool all = suite == "all";
  if (!all && suite != "lemmas" && suite != "rounding" && suite != "sampling") {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  if (all || suite == "lemmas") out.push_back(verify_lemmas(seed, cases));
  if (all || suite == "rounding") out.push_back(verify_rounding(seed, cases));
  if (all || suite == "sampling") out.push_back(verify_sampling(seed, cases));
  return out;
}

}  // namespace subfree
