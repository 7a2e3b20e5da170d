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

#ifndef SUBFREE_INSTANCE_H_
#define SUBFREE_INSTANCE_H_

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfree/bipartite.h"
#include "subfree/element.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"

namespace subfree {

class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

// An arrival stream with its objective and matroid. Bipartite instances carry
// one (objective, matroid, rule) triple per agent and may omit the top-level
// pair.
struct Instance {
  Ground ground;
  std::optional<Objective> objective;
  std::optional<Matroid> matroid;
  std::vector<ElementId> arrival;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<AgentSpec> agents;

  const Objective& f() const;
  const Matroid& m() const;
};

Objective objective_from_json(const nlohmann::json& j, Ground& ground);
nlohmann::json objective_to_json(const Objective& f, const Ground& ground);
Matroid matroid_from_json(const nlohmann::json& j, Ground& ground);
nlohmann::json matroid_to_json(const Matroid& m, const Ground& ground);

// Throws InstanceError (wrapping oracle validation errors) on malformed input.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Sorted keys, shortest round-trip floats, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

// Integers as JSON numbers, everything else as "p/q".
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace subfree

#endif  // SUBFREE_INSTANCE_H_
