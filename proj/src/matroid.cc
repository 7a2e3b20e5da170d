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

#include "subfree/matroid.h"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

namespace subfree {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_ground_size(std::size_t n) {
  if (n > kMaxEnumerationGround) {
    throw MatroidError("ground of size " + std::to_string(n) + " exceeds the enumeration limit of " +
                       std::to_string(kMaxEnumerationGround));
  }
}

}  // namespace

int PartitionMatroid::part(ElementId e) const {
  if (e >= part_of.size() || part_of[e] < 0) {
    throw UnknownElementError("element " + std::to_string(e) + " carries no part label");
  }
  return part_of[e];
}

int ExplicitMatroid::local_index(ElementId e) const {
  auto it = std::find(ground.begin(), ground.end(), e);
  if (it == ground.end()) throw UnknownElementError("element " + std::to_string(e) + " is outside the matroid ground");
  return static_cast<int>(it - ground.begin());
}

Matroid Matroid::uniform(int k) {
  if (k < 1) throw MatroidError("uniform matroid needs k >= 1");
  return Matroid(UniformMatroid{k});
}

Matroid Matroid::partition(std::vector<int> part_of, std::vector<int> capacity, std::vector<std::string> part_names) {
  for (int c : capacity) {
    if (c < 1) throw MatroidError("partition capacities must be >= 1");
  }
  for (int p : part_of) {
    if (p >= static_cast<int>(capacity.size())) throw MatroidError("part label without a capacity");
  }
  if (part_names.empty()) {
    for (std::size_t i = 0; i < capacity.size(); ++i) part_names.push_back(std::to_string(i));
  }
  if (part_names.size() != capacity.size()) throw MatroidError("part names and capacities disagree");
  return Matroid(PartitionMatroid{std::move(part_of), std::move(capacity), std::move(part_names)});
}

Matroid Matroid::explicit_family(std::vector<ElementId> ground, const std::vector<ElementSet>& maximal_sets) {
  check_ground_size(ground.size());
  {
    auto sorted = ground;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw MatroidError("explicit matroid ground has duplicates");
    }
  }
  ExplicitMatroid m;
  m.ground = std::move(ground);
  for (const auto& set : maximal_sets) {
    std::uint32_t mask = 0;
    for (ElementId e : set) mask |= std::uint32_t{1} << m.local_index(e);
    m.maximal.push_back(mask);
  }
  const std::size_t n = m.ground.size();
  const std::uint32_t full = n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);

  // indep[X]: X lies below some stored maximal set. Supersets have larger
  // numeric value, so a descending sweep sees them first.
  std::vector<std::uint8_t> indep(std::size_t{1} << n, 0);
  for (std::uint32_t mask : m.maximal) indep[mask] = 1;
  for (std::uint32_t x = full + 1; x-- > 0;) {
    if (indep[x]) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (!(x & bit) && indep[x | bit]) {
        indep[x] = 1;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!indep[std::uint32_t{1} << i]) throw MatroidError("singleton {" + std::to_string(m.ground[i]) + "} is dependent");
  }
  // rank[X] = |X| if independent, else the best rank after dropping one element.
  std::vector<std::uint8_t> rank(std::size_t{1} << n, 0);
  for (std::uint32_t x = 1; x <= full && x != 0; ++x) {
    if (indep[x]) {
      rank[x] = static_cast<std::uint8_t>(std::popcount(x));
      continue;
    }
    std::uint8_t best = 0;
    for (std::uint32_t rest = x; rest != 0; rest &= rest - 1) {
      best = std::max(best, rank[x & ~(rest & -rest)]);
    }
    rank[x] = best;
  }
  // Augmentation holds iff every independent I is a maximum-size independent
  // subset of I together with everything that cannot extend it.
  for (std::uint32_t x = 0; x <= full; ++x) {
    if (!indep[x]) {
      if (x == full) break;
      continue;
    }
    std::uint32_t blocked = x;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (!(x & bit) && !indep[x | bit]) blocked |= bit;
    }
    if (rank[blocked] != std::popcount(x)) {
      throw MatroidError("explicit family violates the exchange axiom");
    }
    if (x == full) break;
  }
  return Matroid(std::move(m));
}

const UniformMatroid& Matroid::as_uniform() const {
  if (!is_uniform()) throw MatroidError("matroid is not uniform");
  return std::get<UniformMatroid>(variant_);
}

const PartitionMatroid& Matroid::as_partition() const {
  if (!is_partition()) throw MatroidError("matroid is not a partition matroid");
  return std::get<PartitionMatroid>(variant_);
}

int Matroid::add_to_part(ElementId e, const std::string& part, int capacity) {
  auto* pm = std::get_if<PartitionMatroid>(&variant_);
  if (pm == nullptr) throw MatroidError("add_to_part on a non-partition matroid");
  if (capacity < 1) throw MatroidError("partition capacities must be >= 1");
  auto it = std::find(pm->part_names.begin(), pm->part_names.end(), part);
  int idx;
  if (it == pm->part_names.end()) {
    idx = static_cast<int>(pm->part_names.size());
    pm->part_names.push_back(part);
    pm->capacity.push_back(capacity);
  } else {
    idx = static_cast<int>(it - pm->part_names.begin());
  }
  if (e >= pm->part_of.size()) pm->part_of.resize(e + 1, -1);
  pm->part_of[e] = idx;
  return idx;
}

void Matroid::check_known(ElementId e) const {
  std::visit(Overloaded{[](const UniformMatroid&) {}, [&](const PartitionMatroid& pm) { (void)pm.part(e); },
                        [&](const ExplicitMatroid& em) { (void)em.local_index(e); }},
             variant_);
}

bool Matroid::is_independent(std::span<const ElementId> s) const {
  return std::visit(
      Overloaded{
          [&](const UniformMatroid& um) { return s.size() <= static_cast<std::size_t>(um.k); },
          [&](const PartitionMatroid& pm) {
            std::unordered_map<int, int> used;
            bool ok = true;
            for (ElementId e : s) {
              const int p = pm.part(e);
              if (++used[p] > pm.capacity[p]) ok = false;
            }
            return ok;
          },
          [&](const ExplicitMatroid& em) {
            std::uint32_t mask = 0;
            for (ElementId e : s) mask |= std::uint32_t{1} << em.local_index(e);
            return std::any_of(em.maximal.begin(), em.maximal.end(),
                               [mask](std::uint32_t m) { return (mask & ~m) == 0; });
          },
      },
      variant_);
}

ElementSet Matroid::exchange_set(std::span<const ElementId> s, ElementId u) const {
  check_known(u);
  if (!is_independent(s)) throw MatroidError("exchange_set called with a dependent set");
  ElementSet out;
  if (const auto* pm = std::get_if<PartitionMatroid>(&variant_)) {
    const int part = pm->part(u);
    int used = 0;
    for (ElementId v : s) used += pm->part(v) == part ? 1 : 0;
    for (ElementId v : s) {
      if (used < pm->capacity[part] || pm->part(v) == part) out.push_back(v);
    }
    return make_set(std::move(out));
  }
  if (is_uniform()) return make_set(std::vector<ElementId>(s.begin(), s.end()));
  std::vector<ElementId> candidate(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    candidate[i] = u;
    if (is_independent(candidate)) out.push_back(s[i]);
    candidate[i] = s[i];
  }
  return make_set(std::move(out));
}

std::vector<std::uint32_t> Matroid::enumerate_independent_masks(std::span<const ElementId> ground) const {
  check_ground_size(ground.size());
  for (ElementId e : ground) check_known(e);
  std::vector<std::uint32_t> out;
  std::vector<ElementId> current;
  // Depth-first extension in position order; downward closure guarantees every
  // independent set is reached through its independent prefixes.
  auto rec = [&](auto&& self, std::size_t start, std::uint32_t mask) -> void {
    out.push_back(mask);
    for (std::size_t i = start; i < ground.size(); ++i) {
      current.push_back(ground[i]);
      if (is_independent(current)) self(self, i + 1, mask | (std::uint32_t{1} << i));
      current.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<ElementSet> Matroid::enumerate_independent_sets(std::span<const ElementId> ground) const {
  std::vector<ElementSet> out;
  for (std::uint32_t mask : enumerate_independent_masks(ground)) {
    ElementSet s;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) s.push_back(ground[i]);
    }
    out.push_back(make_set(std::move(s)));
  }
  return out;
}

int Matroid::rank(std::span<const ElementId> ground) const {
  int best = 0;
  for (std::uint32_t mask : enumerate_independent_masks(ground)) best = std::max(best, std::popcount(mask));
  return best;
}

}  // namespace subfree
