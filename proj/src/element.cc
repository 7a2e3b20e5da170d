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

#include "subfree/element.h"

#include <algorithm>

namespace subfree {

ElementId Ground::intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<ElementId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

ElementId Ground::at(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw UnknownElementError("unknown element '" + std::string(name) + "'");
  return it->second;
}

bool Ground::contains(std::string_view name) const { return index_.contains(std::string(name)); }

const std::string& Ground::name(ElementId id) const {
  if (id >= names_.size()) throw UnknownElementError("element handle " + std::to_string(id) + " out of range");
  return names_[id];
}

std::vector<std::string> Ground::names_of(std::span<const ElementId> ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (ElementId id : ids) out.push_back(name(id));
  return out;
}

ElementSet make_set(std::vector<ElementId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool set_contains(std::span<const ElementId> set, ElementId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

ElementSet set_insert(ElementSet set, ElementId id) {
  auto it = std::lower_bound(set.begin(), set.end(), id);
  if (it == set.end() || *it != id) set.insert(it, id);
  return set;
}

ElementSet set_erase(ElementSet set, ElementId id) {
  auto it = std::lower_bound(set.begin(), set.end(), id);
  if (it != set.end() && *it == id) set.erase(it);
  return set;
}

}  // namespace subfree
