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

#include "subfree/generators.h"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace subfree::gen {
namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Union-find acyclicity test for the edges selected by `mask`.
bool is_forest(const std::vector<std::pair<int, int>>& edges, std::uint32_t mask, int vertices) {
  std::vector<int> parent(static_cast<std::size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(mask & (std::uint32_t{1} << i))) continue;
    const int a = find(edges[i].first);
    const int b = find(edges[i].second);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

Objective random_objective(std::span<const ElementId> elems, Rng& rng, ObjectiveMix mix) {
  if (mix == ObjectiveMix::kAny) {
    const int pick = uniform_int(rng, 0, elems.size() <= kMaxExactSupport ? 2 : 1);
    mix = static_cast<ObjectiveMix>(pick);
  }
  switch (mix) {
    case ObjectiveMix::kLinear:
      return random_linear(elems, rng);
    case ObjectiveMix::kTable:
      return random_submodular_table(elems, rng, false);
    default:
      return random_coverage(elems, rng);
  }
}

}  // namespace

std::vector<ElementId> name_elements(Ground& ground, int n, const std::string& prefix) {
  std::vector<ElementId> out;
  for (int i = 0; i < n; ++i) out.push_back(ground.intern(prefix + std::to_string(i)));
  return out;
}

Objective random_coverage(std::span<const ElementId> elems, Rng& rng, int items) {
  if (items <= 0) items = std::max(2, static_cast<int>(elems.size()) + uniform_int(rng, -1, 3));
  std::vector<std::string> names;
  std::vector<double> weights;
  for (int i = 0; i < items; ++i) {
    names.push_back("x" + std::to_string(i));
    weights.push_back(uniform_real(rng, 0.1, 1.0));
  }
  std::map<ElementId, std::vector<std::uint32_t>> covers;
  for (ElementId e : elems) {
    std::vector<std::uint32_t> c;
    const int size = uniform_int(rng, 1, std::min(3, items));
    while (static_cast<int>(c.size()) < size) {
      const auto x = static_cast<std::uint32_t>(uniform_int(rng, 0, items - 1));
      if (std::find(c.begin(), c.end(), x) == c.end()) c.push_back(x);
    }
    std::sort(c.begin(), c.end());
    covers[e] = std::move(c);
  }
  return Objective::weighted_coverage(std::move(names), std::move(weights), covers);
}

Objective random_linear(std::span<const ElementId> elems, Rng& rng) {
  std::map<ElementId, double> w;
  for (ElementId e : elems) w[e] = uniform_real(rng, 0.0, 1.0);
  return Objective::linear(w);
}

Objective random_submodular_table(std::span<const ElementId> elems, Rng& rng, bool nonmonotone) {
  if (elems.size() > kMaxExactSupport) throw ObjectiveError("random tables hold at most 15 elements");
  const Objective cover = random_coverage(elems, rng);
  std::vector<double> values = subset_values(cover, elems);
  if (nonmonotone) {
    std::vector<double> cut;
    for (ElementId e : elems) {
      const ElementId single[] = {e};
      cut.push_back(uniform_real(rng, 0.0, 1.0) * cover.value(single));
    }
    for (std::size_t mask = 0; mask < values.size(); ++mask) {
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (mask & (std::size_t{1} << i)) values[mask] -= cut[i];
      }
    }
    const double low = *std::min_element(values.begin(), values.end());
    for (double& v : values) v -= low;
  }
  return Objective::explicit_table(std::vector<ElementId>(elems.begin(), elems.end()), std::move(values));
}

Matroid random_uniform(std::span<const ElementId> elems, Rng& rng, int k_min, int k_max) {
  const int hi = std::max(k_min, std::min(k_max, static_cast<int>(elems.size())));
  return Matroid::uniform(uniform_int(rng, k_min, hi));
}

Matroid random_partition(std::span<const ElementId> elems, Rng& rng, int max_parts, int max_capacity) {
  const int parts = uniform_int(rng, 1, max_parts);
  std::vector<int> capacity;
  std::vector<std::string> names;
  for (int p = 0; p < parts; ++p) {
    capacity.push_back(uniform_int(rng, 1, max_capacity));
    names.push_back("p" + std::to_string(p));
  }
  std::vector<int> part_of;
  for (ElementId e : elems) {
    if (e >= part_of.size()) part_of.resize(e + 1, -1);
    part_of[e] = uniform_int(rng, 0, parts - 1);
  }
  return Matroid::partition(std::move(part_of), std::move(capacity), std::move(names));
}

Matroid random_graphic(std::span<const ElementId> elems, Rng& rng, int vertices) {
  if (elems.size() > kMaxEnumerationGround) throw MatroidError("graphic matroids hold at most 20 edges");
  if (vertices <= 0) vertices = uniform_int(rng, 3, 5);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const int a = uniform_int(rng, 0, vertices - 1);
    int b = uniform_int(rng, 0, vertices - 2);
    if (b >= a) ++b;
    edges.emplace_back(a, b);
  }
  const std::uint32_t full = std::uint32_t{1} << elems.size();
  std::vector<std::uint8_t> forest(full);
  int rank = 0;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    forest[mask] = is_forest(edges, mask, vertices);
    if (forest[mask]) rank = std::max(rank, std::popcount(mask));
  }
  std::vector<ElementSet> maximal;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (!forest[mask] || std::popcount(mask) != rank) continue;
    ElementSet s;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) s.push_back(elems[i]);
    }
    maximal.push_back(make_set(std::move(s)));
  }
  return Matroid::explicit_family(std::vector<ElementId>(elems.begin(), elems.end()), maximal);
}

Matroid random_matroid(std::span<const ElementId> elems, Rng& rng, MatroidMix mix) {
  if (mix == MatroidMix::kAny) mix = static_cast<MatroidMix>(uniform_int(rng, 0, 2));
  switch (mix) {
    case MatroidMix::kPartition:
      return random_partition(elems, rng);
    case MatroidMix::kGraphic:
      return random_graphic(elems, rng);
    default:
      return random_uniform(elems, rng);
  }
}

Instance random_monotone_instance(int n, Rng& rng, MatroidMix mix, ObjectiveMix objective) {
  Instance inst;
  std::vector<ElementId> elems = name_elements(inst.ground, n);
  inst.objective = random_objective(elems, rng, objective);
  inst.matroid = random_matroid(elems, rng, mix);
  std::shuffle(elems.begin(), elems.end(), rng);
  inst.arrival = elems;
  return inst;
}

Instance random_nonmonotone_instance(int n, Rng& rng, MatroidMix mix) {
  Instance inst;
  std::vector<ElementId> elems = name_elements(inst.ground, n);
  inst.objective = random_submodular_table(elems, rng, true);
  inst.matroid = random_matroid(elems, rng, mix);
  std::shuffle(elems.begin(), elems.end(), rng);
  inst.arrival = elems;
  return inst;
}

Instance random_bipartite_instance(int n, int agents, Rng& rng) {
  Instance inst;
  std::vector<ElementId> elems = name_elements(inst.ground, n);
  std::vector<std::vector<ElementId>> known(static_cast<std::size_t>(agents));
  for (ElementId e : elems) {
    bool any = false;
    for (auto& k : known) {
      if (uniform_real(rng, 0.0, 1.0) < 0.7) {
        k.push_back(e);
        any = true;
      }
    }
    if (!any) known[static_cast<std::size_t>(uniform_int(rng, 0, agents - 1))].push_back(e);
  }
  for (auto& k : known) {
    if (k.empty()) k.push_back(elems[static_cast<std::size_t>(uniform_int(rng, 0, n - 1))]);
    const bool threshold = uniform_int(rng, 0, 2) == 0;
    Objective f = random_coverage(k, rng);
    if (threshold) {
      inst.agents.push_back(AgentSpec{std::move(f), Matroid::uniform(uniform_int(rng, 4, 5)), AgentRule::kKUniform});
    } else {
      inst.agents.push_back(AgentSpec{std::move(f), random_matroid(k, rng), AgentRule::kGeneral});
    }
  }
  std::shuffle(elems.begin(), elems.end(), rng);
  inst.arrival = elems;
  return inst;
}

}  // namespace subfree::gen
