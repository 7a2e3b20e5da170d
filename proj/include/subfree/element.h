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

#ifndef SUBFREE_ELEMENT_H_
#define SUBFREE_ELEMENT_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subfree {

// Dense handle for an element of the ground set. The string identity lives in
// a Ground registry; all algorithmic code works on these handles.
using ElementId = std::uint32_t;

// A set of elements. By convention sorted ascending and duplicate-free unless
// a function documents otherwise.
using ElementSet = std::vector<ElementId>;

class UnknownElementError : public std::invalid_argument {
 public:
  explicit UnknownElementError(const std::string& what) : std::invalid_argument(what) {}
};

// Bidirectional map between opaque string ids and dense ElementIds.
class Ground {
 public:
  // Returns the existing handle for `name` or registers a new one.
  ElementId intern(std::string_view name);
  // Throws UnknownElementError when `name` is not registered.
  ElementId at(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::string& name(ElementId id) const;
  std::size_t size() const { return names_.size(); }

  std::vector<std::string> names_of(std::span<const ElementId> ids) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ElementId> index_;
};

ElementSet make_set(std::vector<ElementId> ids);
bool set_contains(std::span<const ElementId> set, ElementId id);
ElementSet set_insert(ElementSet set, ElementId id);
ElementSet set_erase(ElementSet set, ElementId id);

}  // namespace subfree

#endif  // SUBFREE_ELEMENT_H_
