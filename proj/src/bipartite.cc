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

#include "subfree/bipartite.h"

#include <algorithm>
#include <limits>

namespace subfree {

std::string agent_rule_name(AgentRule rule) { return rule == AgentRule::kGeneral ? "general" : "k-uniform"; }

AgentRule parse_agent_rule(const std::string& name) {
  if (name == "general") return AgentRule::kGeneral;
  if (name == "k-uniform") return AgentRule::kKUniform;
  throw AlgorithmError("unknown agent rule '" + name + "'");
}

BipartiteAssignment::BipartiteAssignment(std::vector<AgentSpec> agents, double c) : c_(c) {
  if (agents.empty()) throw AlgorithmError("need at least one agent");
  for (auto& a : agents) {
    agents_.push_back(std::make_unique<AgentSpec>(std::move(a)));
    const AgentSpec& spec = *agents_.back();
    if (!spec.objective.is_monotone()) throw AlgorithmError("agents need monotone objectives");
    states_.emplace_back(spec.objective, spec.matroid);
    if (spec.rule == AgentRule::kKUniform) {
      if (!spec.matroid.is_uniform()) throw AlgorithmError("threshold agents need uniform matroids");
      alphas_.push_back(solve_alpha(spec.matroid.as_uniform().k, 1).value);
    } else {
      alphas_.push_back(4.0);
    }
  }
}

std::optional<Decision> BipartiteAssignment::propose(std::size_t i, ElementId u) const {
  const AgentSpec& spec = *agents_[i];
  if (!spec.objective.knows(u)) return std::nullopt;
  if (spec.matroid.is_partition()) {
    const auto& pm = spec.matroid.as_partition();
    if (u >= pm.part_of.size() || pm.part_of[u] < 0) return std::nullopt;
  }
  if (const auto* em = std::get_if<ExplicitMatroid>(&spec.matroid.variant())) {
    if (std::find(em->ground.begin(), em->ground.end(), u) == em->ground.end()) return std::nullopt;
  }
  Decision d = spec.rule == AgentRule::kKUniform ? propose_k_uniform(states_[i], u, alphas_[i])
                                                 : propose_general_matroid(states_[i], u, c_);
  if (!d.accepted) return std::nullopt;
  return d;
}

AssignmentOutcome BipartiteAssignment::step(ElementId u) {
  AssignmentOutcome out;
  out.element = u;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    out.proposals.push_back(propose(i, u));
    const auto& p = out.proposals.back();
    if (!p) continue;
    if (!out.agent || p->gain() > out.decision.gain()) {
      out.agent = static_cast<int>(i);
      out.decision = *p;
    }
  }
  if (out.agent) commit(states_[static_cast<std::size_t>(*out.agent)], out.decision);
  if (!out.agent) out.decision.element = u;
  return out;
}

double BipartiteAssignment::total_value() const {
  double total = 0.0;
  for (const auto& st : states_) total += st.value();
  return total;
}

double BipartiteAssignment::alpha() const { return *std::max_element(alphas_.begin(), alphas_.end()); }

double optimal_assignment_value(std::span<const AgentSpec* const> agents, std::span<const ElementId> arrived) {
  const std::size_t n = arrived.size();
  if (n > 12) throw AlgorithmError("assignment brute force supports at most 12 elements");
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  const std::size_t full = std::size_t{1} << n;
  std::vector<double> dp(full, kNone);
  dp[0] = 0.0;
  for (const AgentSpec* agent : agents) {
    std::vector<ElementId> local;
    std::vector<std::size_t> position;
    for (std::size_t i = 0; i < n; ++i) {
      const ElementId e = arrived[i];
      if (!agent->objective.knows(e)) continue;
      try {
        const ElementId single[] = {e};
        if (!agent->matroid.is_independent(single)) continue;
      } catch (const std::invalid_argument&) {
        continue;
      }
      local.push_back(e);
      position.push_back(i);
    }
    std::vector<double> best(full, kNone);
    for (std::uint32_t lm : agent->matroid.enumerate_independent_masks(local)) {
      std::size_t mask = 0;
      std::vector<ElementId> subset;
      for (std::size_t j = 0; j < local.size(); ++j) {
        if (lm & (std::uint32_t{1} << j)) {
          mask |= std::size_t{1} << position[j];
          subset.push_back(local[j]);
        }
      }
      best[mask] = agent->objective.value(subset);
    }
    std::vector<double> next(full, kNone);
    for (std::size_t mask = 0; mask < full; ++mask) {
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        if (best[sub] != kNone && dp[mask ^ sub] != kNone) next[mask] = std::max(next[mask], dp[mask ^ sub] + best[sub]);
        if (sub == 0) break;
      }
    }
    dp = std::move(next);
  }
  return *std::max_element(dp.begin(), dp.end());
}

}  // namespace subfree
