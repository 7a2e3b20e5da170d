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

#ifndef SUBFREE_BIPARTITE_H_
#define SUBFREE_BIPARTITE_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subfree/algorithms.h"

namespace subfree {

enum class AgentRule { kGeneral, kKUniform };

std::string agent_rule_name(AgentRule rule);
AgentRule parse_agent_rule(const std::string& name);

struct AgentSpec {
  Objective objective;
  Matroid matroid;
  AgentRule rule = AgentRule::kGeneral;
};

struct AssignmentOutcome {
  ElementId element = 0;
  std::optional<int> agent;
  Decision decision;
  // Per agent, the proposal it would have made (empty when it passes).
  std::vector<std::optional<Decision>> proposals;
};

// Every agent runs its own rule on its own objective and matroid. An arrival
// is offered to all agents without changing them; among those that would
// accept, the one with the largest w(u) - w_S(evicted) takes it (lowest index
// on ties) and only that agent commits. Agents whose objective does not define
// the element pass.
class BipartiteAssignment {
 public:
  explicit BipartiteAssignment(std::vector<AgentSpec> agents, double c = 2.0);

  AssignmentOutcome step(ElementId u);

  std::size_t size() const { return agents_.size(); }
  const AgentSpec& agent(std::size_t i) const { return *agents_[i]; }
  const OnlineState& agent_state(std::size_t i) const { return states_[i]; }
  // Sum over agents of f(S) for the agent's own objective.
  double total_value() const;
  // The largest per-agent alpha: 4 for exchange agents, alpha_k for threshold
  // agents.
  double alpha() const;
  double guaranteed_ratio() const { return 1.0 / (alpha() + 1.0); }

 private:
  std::optional<Decision> propose(std::size_t i, ElementId u) const;

  std::vector<std::unique_ptr<AgentSpec>> agents_;
  std::vector<OnlineState> states_;
  std::vector<double> alphas_;
  double c_;
};

// Exhaustive optimum over assignments of `arrived` to agents, each agent's
// share independent in its matroid (|arrived| <= 12).
double optimal_assignment_value(std::span<const AgentSpec* const> agents, std::span<const ElementId> arrived);

}  // namespace subfree

#endif  // SUBFREE_BIPARTITE_H_
