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

#include "subfree/instance.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace subfree {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InstanceError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw InstanceError(what + " must be a number");
  return j.get<double>();
}

std::string table_key(const Ground& ground, std::span<const ElementId> ground_ids, std::uint32_t mask) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ground_ids.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) names.push_back(ground.name(ground_ids[i]));
  }
  std::sort(names.begin(), names.end());
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names[i];
  }
  return out;
}

std::vector<ElementId> id_list(const json& j, Ground& ground, const std::string& what) {
  if (!j.is_array()) throw InstanceError(what + " must be an array of element ids");
  std::vector<ElementId> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InstanceError(what + " must hold strings");
    out.push_back(ground.intern(e.get<std::string>()));
  }
  return out;
}

template <class F>
auto wrap(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InstanceError&) {
    throw;
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InstanceError(e.what());
  } catch (const std::overflow_error& e) {
    throw InstanceError(e.what());
  }
}

}  // namespace

const Objective& Instance::f() const {
  if (!objective) throw InstanceError("instance has no top-level objective");
  return *objective;
}

const Matroid& Instance::m() const {
  if (!matroid) throw InstanceError("instance has no top-level matroid");
  return *matroid;
}

json rational_to_json(const Rational& r) {
  if (r.is_integer()) return json(r.num());
  return json(r.to_string());
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_float()) return Rational::parse(j.dump());
  throw InstanceError("expected a rational as an integer or a \"p/q\" string");
}

Objective objective_from_json(const json& j, Ground& ground) {
  return wrap([&]() -> Objective {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "linear") {
      std::map<ElementId, double> weight;
      for (const auto& [name, w] : field(j, "weight").items()) weight[ground.intern(name)] = number(w, "weight");
      return Objective::linear(weight);
    }
    if (type == "weighted_coverage") {
      std::vector<std::string> item_names;
      std::vector<double> item_weight;
      std::map<std::string, std::uint32_t> item_index;
      for (const auto& [name, w] : field(j, "universe_weight").items()) {
        item_index[name] = static_cast<std::uint32_t>(item_names.size());
        item_names.push_back(name);
        item_weight.push_back(number(w, "universe weight"));
      }
      std::map<ElementId, std::vector<std::uint32_t>> covers;
      for (const auto& [name, items] : field(j, "covers").items()) {
        std::vector<std::uint32_t> ids;
        for (const auto& x : items) {
          auto it = item_index.find(x.get<std::string>());
          if (it == item_index.end()) throw InstanceError("cover of '" + name + "' names an unknown item");
          ids.push_back(it->second);
        }
        covers[ground.intern(name)] = std::move(ids);
      }
      return Objective::weighted_coverage(std::move(item_names), std::move(item_weight), covers);
    }
    if (type == "interval_coverage") {
      std::map<ElementId, std::vector<Interval>> covers;
      for (const auto& [name, ivs] : field(j, "covers").items()) {
        std::vector<Interval> list;
        for (const auto& iv : ivs) {
          if (!iv.is_array() || iv.size() != 2) throw InstanceError("intervals are [lo, hi] pairs");
          list.push_back(Interval{rational_from_json(iv[0]), rational_from_json(iv[1])});
        }
        covers[ground.intern(name)] = std::move(list);
      }
      return Objective::interval_coverage(number(field(j, "epsilon"), "epsilon"), covers);
    }
    if (type == "explicit_table") {
      const std::vector<ElementId> ids = id_list(field(j, "ground"), ground, "table ground");
      if (ids.size() > kMaxExactSupport) throw InstanceError("explicit table ground exceeds 15 elements");
      const json& table = field(j, "value");
      if (!table.is_object()) throw InstanceError("table values must be an object");
      const std::size_t size = std::size_t{1} << ids.size();
      if (table.size() != size) throw InstanceError("table must list exactly every subset of its ground");
      std::vector<double> value(size);
      for (std::uint32_t mask = 0; mask < size; ++mask) {
        const std::string key = table_key(ground, ids, mask);
        if (!table.contains(key)) throw InstanceError("table misses subset \"" + key + "\"");
        value[mask] = number(table.at(key), "table value");
      }
      return Objective::explicit_table(ids, std::move(value));
    }
    throw InstanceError("unknown objective type '" + type + "'");
  });
}

json objective_to_json(const Objective& f, const Ground& ground) {
  json j;
  j["type"] = f.kind();
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearObjective>) {
          json w = json::object();
          for (ElementId e : f.elements()) w[ground.name(e)] = *o.weight[e];
          j["weight"] = w;
        } else if constexpr (std::is_same_v<T, WeightedCoverage>) {
          json uw = json::object();
          for (std::size_t i = 0; i < o.item_names.size(); ++i) uw[o.item_names[i]] = o.item_weight[i];
          json covers = json::object();
          for (ElementId e : f.elements()) {
            std::vector<std::string> items;
            for (std::uint32_t x : *o.covers[e]) items.push_back(o.item_names[x]);
            std::sort(items.begin(), items.end());
            covers[ground.name(e)] = items;
          }
          j["universe_weight"] = uw;
          j["covers"] = covers;
        } else if constexpr (std::is_same_v<T, IntervalCoverage>) {
          j["epsilon"] = o.epsilon;
          json covers = json::object();
          for (ElementId e : f.elements()) {
            json list = json::array();
            for (const auto& iv : *o.covers[e]) list.push_back(json::array({rational_to_json(iv.lo), rational_to_json(iv.hi)}));
            covers[ground.name(e)] = list;
          }
          j["covers"] = covers;
        } else {
          json g = json::array();
          for (ElementId e : o.ground) g.push_back(ground.name(e));
          json table = json::object();
          for (std::uint32_t mask = 0; mask < o.value.size(); ++mask) table[table_key(ground, o.ground, mask)] = o.value[mask];
          j["ground"] = g;
          j["value"] = table;
        }
      },
      f.variant());
  return j;
}

Matroid matroid_from_json(const json& j, Ground& ground) {
  return wrap([&]() -> Matroid {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "uniform") {
      const json& k = field(j, "k");
      if (!k.is_number_integer()) throw InstanceError("k must be an integer");
      return Matroid::uniform(k.get<int>());
    }
    if (type == "partition") {
      std::vector<std::string> names;
      std::vector<int> capacity;
      std::map<std::string, int> index;
      for (const auto& [label, c] : field(j, "capacity").items()) {
        if (!c.is_number_integer()) throw InstanceError("capacities must be integers");
        index[label] = static_cast<int>(names.size());
        names.push_back(label);
        capacity.push_back(c.get<int>());
      }
      std::vector<int> part_of;
      for (const auto& [name, label] : field(j, "part_of").items()) {
        auto it = index.find(label.get<std::string>());
        if (it == index.end()) throw InstanceError("element '" + name + "' names a part without capacity");
        const ElementId e = ground.intern(name);
        if (e >= part_of.size()) part_of.resize(e + 1, -1);
        part_of[e] = it->second;
      }
      return Matroid::partition(std::move(part_of), std::move(capacity), std::move(names));
    }
    if (type == "explicit") {
      const std::vector<ElementId> ids = id_list(field(j, "ground"), ground, "matroid ground");
      std::vector<ElementSet> maximal;
      for (const auto& set : field(j, "maximal")) maximal.push_back(id_list(set, ground, "maximal set"));
      return Matroid::explicit_family(ids, maximal);
    }
    throw InstanceError("unknown matroid type '" + type + "'");
  });
}

json matroid_to_json(const Matroid& m, const Ground& ground) {
  json j;
  std::visit(
      [&](const auto& mv) {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, UniformMatroid>) {
          j["type"] = "uniform";
          j["k"] = mv.k;
        } else if constexpr (std::is_same_v<T, PartitionMatroid>) {
          j["type"] = "partition";
          json cap = json::object();
          for (std::size_t i = 0; i < mv.capacity.size(); ++i) cap[mv.part_names[i]] = mv.capacity[i];
          json part_of = json::object();
          for (std::size_t e = 0; e < mv.part_of.size(); ++e) {
            if (mv.part_of[e] >= 0) part_of[ground.name(static_cast<ElementId>(e))] = mv.part_names[static_cast<std::size_t>(mv.part_of[e])];
          }
          j["capacity"] = cap;
          j["part_of"] = part_of;
        } else {
          j["type"] = "explicit";
          json g = json::array();
          for (ElementId e : mv.ground) g.push_back(ground.name(e));
          json maximal = json::array();
          for (std::uint32_t mask : mv.maximal) {
            json set = json::array();
            for (std::size_t i = 0; i < mv.ground.size(); ++i) {
              if (mask & (std::uint32_t{1} << i)) set.push_back(ground.name(mv.ground[i]));
            }
            maximal.push_back(set);
          }
          j["ground"] = g;
          j["maximal"] = maximal;
        }
      },
      m.variant());
  return j;
}

Instance instance_from_json(const json& j) {
  return wrap([&]() -> Instance {
    if (!j.is_object()) throw InstanceError("instance must be a JSON object");
    Instance inst;
    if (j.contains("objective")) inst.objective = objective_from_json(j.at("objective"), inst.ground);
    if (j.contains("matroid")) inst.matroid = matroid_from_json(j.at("matroid"), inst.ground);
    if (j.contains("agents")) {
      for (const auto& a : j.at("agents")) {
        Objective f = objective_from_json(field(a, "objective"), inst.ground);
        Matroid m = matroid_from_json(field(a, "matroid"), inst.ground);
        const AgentRule rule = parse_agent_rule(field(a, "rule").get<std::string>());
        inst.agents.push_back(AgentSpec{std::move(f), std::move(m), rule});
      }
    }
    if (inst.agents.empty() && (!inst.objective || !inst.matroid)) {
      throw InstanceError("instance needs an objective and a matroid");
    }
    if (inst.objective.has_value() != inst.matroid.has_value()) {
      throw InstanceError("objective and matroid come as a pair");
    }
    inst.arrival = id_list(field(j, "arrival_order"), inst.ground, "arrival_order");
    {
      auto sorted = inst.arrival;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InstanceError("arrival_order repeats an element");
      }
    }
    for (ElementId e : inst.arrival) {
      const std::string& name = inst.ground.name(e);
      if (inst.objective) {
        if (!inst.objective->knows(e)) throw InstanceError("arrival '" + name + "' is unknown to the objective");
        const ElementId single[] = {e};
        (void)inst.matroid->is_independent(single);
      } else {
        const bool known = std::any_of(inst.agents.begin(), inst.agents.end(),
                                       [&](const AgentSpec& a) { return a.objective.knows(e); });
        if (!known) throw InstanceError("arrival '" + name + "' is unknown to every agent");
      }
    }
    if (j.contains("metadata")) inst.metadata = j.at("metadata");
    return inst;
  });
}

json instance_to_json(const Instance& inst) {
  json j;
  if (inst.objective) j["objective"] = objective_to_json(*inst.objective, inst.ground);
  if (inst.matroid) j["matroid"] = matroid_to_json(*inst.matroid, inst.ground);
  if (!inst.agents.empty()) {
    json agents = json::array();
    for (const auto& a : inst.agents) {
      agents.push_back({{"objective", objective_to_json(a.objective, inst.ground)},
                        {"matroid", matroid_to_json(a.matroid, inst.ground)},
                        {"rule", agent_rule_name(a.rule)}});
    }
    j["agents"] = agents;
  }
  json arrival = json::array();
  for (ElementId e : inst.arrival) arrival.push_back(inst.ground.name(e));
  j["arrival_order"] = arrival;
  j["metadata"] = inst.metadata;
  return j;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw InstanceError(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write instance file '" + path + "'");
  out << canonical_dump(instance_to_json(inst));
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace subfree
