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

#ifndef SUBFREE_ADVERSARIES_H_
#define SUBFREE_ADVERSARIES_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfree/algorithms.h"
#include "subfree/element.h"
#include "subfree/matroid.h"
#include "subfree/objective.h"

namespace subfree {

class AdversaryError : public std::invalid_argument {
 public:
  explicit AdversaryError(const std::string& what) : std::invalid_argument(what) {}
};

enum class AdversaryFamily { kUniform, kPartitionMonotone, kPartitionGeneral };

std::string family_name(AdversaryFamily family);
AdversaryFamily parse_family(const std::string& name);

struct AdversaryParams {
  AdversaryFamily family = AdversaryFamily::kPartitionMonotone;
  double alpha = 3.0;
  // Interval family only.
  double epsilon = 0.05;
  double delta = 0.2;
  int k = 100;
  // Replaces floor(delta * k) as the number of interval phases.
  std::optional<int> phases;
  // Stop as soon as some round has ratio <= 1/alpha.
  bool stop_when_forced = true;
  // Safety bound on the partition families' phase count.
  int max_phases = 100000;
};

// Weights a_1, a_2, ... with a_1 = 1 and a_{i+1} = alpha a_i - sum_{j<=i} a_j,
// up to and including the first negative term (or `max_terms` terms).
std::vector<long double> monotone_weights(double alpha, int max_terms = 100000);

struct GeneralWeights {
  std::vector<long double> a;
  // b.back() <= 0 when the sequence turned nonpositive within the bound.
  std::vector<long double> b;
};

// Pair values a_i and singleton values b_i of the adaptive partition
// construction, up to and including the first b_i <= 0.
GeneralWeights general_weights(double alpha, int max_terms = 100000);

// (alpha^2 + alpha + 1)(alpha^2 - 3 alpha + 1): the discriminant of the
// second-order recurrence satisfied by the b_i.
double general_discriminant(double alpha);

// alpha range on which the family forces ratio 1/alpha.
bool alpha_in_range(AdversaryFamily family, double alpha);

// An adaptive opponent. It owns the ground set, objective and matroid, all of
// which grow as elements are emitted; algorithms may hold references to them
// for the whole run.
class AdversaryDriver {
 public:
  static std::unique_ptr<AdversaryDriver> create(const AdversaryParams& params);
  virtual ~AdversaryDriver() = default;

  // The next element given the algorithm's current feasible set, or nothing
  // once the driver stops. Throws after a stop.
  std::optional<ElementId> next_element(std::span<const ElementId> visible);

  // Closed-form optimum over the elements emitted so far.
  virtual double opt_value() const = 0;

  // Checks the algorithm's response to the element just emitted; returns a
  // description when the response contradicts a property the construction
  // relies on.
  virtual std::optional<std::string> audit(std::span<const ElementId> visible) const;

  bool terminated() const { return terminated_; }
  const std::string& reason() const { return reason_; }
  void stop(std::string reason);

  const AdversaryParams& params() const { return params_; }
  const Ground& ground() const { return ground_; }
  const Objective& objective() const { return *objective_; }
  const Matroid& matroid() const { return *matroid_; }
  const std::vector<ElementId>& arrived() const { return arrived_; }
  int phase() const { return phase_; }

 protected:
  explicit AdversaryDriver(const AdversaryParams& params) : params_(params) {}
  virtual std::optional<ElementId> emit(std::span<const ElementId> visible) = 0;
  ElementId announce(ElementId e) {
    arrived_.push_back(e);
    return e;
  }

  AdversaryParams params_;
  Ground ground_;
  std::unique_ptr<Objective> objective_;
  std::unique_ptr<Matroid> matroid_;
  std::vector<ElementId> arrived_;
  int phase_ = 0;
  bool terminated_ = false;
  std::string reason_;
};

struct AdversaryEvent {
  int round = 0;
  std::string element;
  bool accepted = false;
  std::optional<std::string> evicted;
  double f_S = 0.0;
  double opt = 0.0;
  double ratio = 1.0;
};

struct AdversaryOutcome {
  std::string family;
  std::string algorithm;
  double alpha = 0.0;
  bool alpha_in_range = true;
  double min_ratio = 1.0;
  double final_ratio = 1.0;
  int rounds = 0;
  int phases = 0;
  std::string reason;
  std::vector<AdversaryEvent> events;
  std::vector<std::string> violations;
  // Some round had ratio <= 1/alpha (up to 1e-9).
  bool forced() const { return min_ratio <= 1.0 / alpha + 1e-9; }
};

using AlgorithmFactory = std::function<std::unique_ptr<OnlineAlgorithm>(const Objective&, const Matroid&)>;

// Feeds the driver's elements to a fresh algorithm until the driver stops,
// recording f(S) / OPT after every round (rounds with OPT = 0 count as 1).
AdversaryOutcome run_adversary(AdversaryDriver& driver, const AlgorithmFactory& make_algorithm);

}  // namespace subfree

#endif  // SUBFREE_ADVERSARIES_H_
