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

#ifndef SUBFREE_MATROID_H_
#define SUBFREE_MATROID_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "subfree/element.h"

namespace subfree {

class MatroidError : public std::invalid_argument {
 public:
  explicit MatroidError(const std::string& what) : std::invalid_argument(what) {}
};

// Largest ground handed to the exhaustive enumerators.
inline constexpr std::size_t kMaxEnumerationGround = 20;

struct UniformMatroid {
  int k = 1;
};

struct PartitionMatroid {
  // part_of[e] is the part index of element e, or -1 when unlabeled.
  std::vector<int> part_of;
  std::vector<int> capacity;
  std::vector<std::string> part_names;

  int part(ElementId e) const;
};

// Independent sets are the subsets of the stored maximal sets. Local bit i
// stands for ground[i].
struct ExplicitMatroid {
  std::vector<ElementId> ground;
  std::vector<std::uint32_t> maximal;

  int local_index(ElementId e) const;
};

// Independence structure with the exchange queries the online algorithms use.
// Immutable after construction except for the explicit extension hooks the
// adversaries use to label elements they create on the fly.
class Matroid {
 public:
  using Variant = std::variant<UniformMatroid, PartitionMatroid, ExplicitMatroid>;

  static Matroid uniform(int k);
  static Matroid partition(std::vector<int> part_of, std::vector<int> capacity,
                           std::vector<std::string> part_names = {});
  // Validates downward closure, the exchange axiom and independence of every
  // singleton; throws MatroidError otherwise.
  static Matroid explicit_family(std::vector<ElementId> ground, const std::vector<ElementSet>& maximal_sets);

  const Variant& variant() const { return variant_; }
  bool is_uniform() const { return std::holds_alternative<UniformMatroid>(variant_); }
  bool is_partition() const { return std::holds_alternative<PartitionMatroid>(variant_); }
  const UniformMatroid& as_uniform() const;
  const PartitionMatroid& as_partition() const;

  // Adds (or relabels) `e` into part `part`, creating the part with the given
  // capacity if needed. Partition matroids only.
  int add_to_part(ElementId e, const std::string& part, int capacity);

  // Throws UnknownElementError for elements outside an explicit ground or
  // without a part label.
  bool is_independent(std::span<const ElementId> s) const;

  // {v in s : s - v + u is independent}. Requires s independent and u not in s.
  ElementSet exchange_set(std::span<const ElementId> s, ElementId u) const;

  // Every independent subset of `ground`, each exactly once, as bitmasks over
  // the positions of `ground`.
  std::vector<std::uint32_t> enumerate_independent_masks(std::span<const ElementId> ground) const;
  std::vector<ElementSet> enumerate_independent_sets(std::span<const ElementId> ground) const;

  // Size of the largest independent subset of `ground` (|ground| <= 20).
  int rank(std::span<const ElementId> ground) const;

 private:
  explicit Matroid(Variant v) : variant_(std::move(v)) {}
  void check_known(ElementId e) const;

  Variant variant_;
};

}  // namespace subfree

#endif  // SUBFREE_MATROID_H_
