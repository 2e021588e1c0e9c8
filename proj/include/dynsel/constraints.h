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

// Packing constraint families, their polytopes, and the activity-time aware
// (temporal) versions of both.
//
// An element e arrives at slot s_e and, once selected, blocks every element
// arriving at a slot in [s_e, s_e + d_e]. The active set of e is
//   E_e = { e' : s_e' <= s_e <= s_e' + d_e' },
// and a set S is temporally feasible iff S intersected with every E_e is
// independent in the underlying family.

#ifndef DYNSEL_CONSTRAINTS_H_
#define DYNSEL_CONSTRAINTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynsel {

// Absolute tolerance on every linear constraint check.
inline constexpr double kPolytopeTolerance = 1e-9;

// Dense element ids, ascending.
using ElementSet = std::vector<int>;

// Number of arrival slots an element keeps blocking after its own arrival.
// "Infinite" is a distinguished value, not a large number.
class Activity {
 public:
  constexpr Activity() = default;

  static constexpr Activity Infinite() { return Activity(0, true); }
  // Throws InputError for negative slot counts.
  static Activity Finite(int64_t slots);
  // -1 encodes infinity (the on-disk representation).
  static Activity FromEncoded(int64_t encoded);

  bool is_infinite() const { return infinite_; }
  // Only meaningful for finite activities.
  int64_t slots() const { return slots_; }
  int64_t Encoded() const { return infinite_ ? -1 : slots_; }

  // True if an element with this activity still blocks an arrival `gap`
  // slots after its own (gap >= 0).
  bool Covers(int64_t gap) const { return infinite_ || gap <= slots_; }

  friend bool operator==(Activity a, Activity b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.slots_ == b.slots_);
  }
  // Componentwise order used by the monotonicity properties.
  friend bool operator<=(Activity a, Activity b) {
    return b.infinite_ || (!a.infinite_ && a.slots_ <= b.slots_);
  }

 private:
  constexpr Activity(int64_t slots, bool infinite)
      : slots_(slots), infinite_(infinite) {}

  int64_t slots_ = 0;
  bool infinite_ = false;
};

struct Element {
  int id = 0;
  double weight = 0.0;
  Activity activity;
  int64_t arrival = 1;
};

// Every ground-set element exactly once, with distinct arrival slots in
// [1, m]. Immutable after construction.
class InstanceSequence {
 public:
  InstanceSequence() = default;
  // Validates the invariants; throws InputError on violation.
  explicit InstanceSequence(std::vector<Element> elements);

  int size() const { return static_cast<int>(by_id_.size()); }
  const Element& element(int id) const { return by_id_[id]; }
  std::span<const Element> elements() const { return by_id_; }
  // Element ids sorted by arrival slot.
  std::span<const int> order() const { return order_; }
  // Index of `id` within order().
  int position(int id) const { return position_[id]; }

  // True if `blocker` is active when `e` arrives (blocker in E_e).
  bool IsActiveAt(int blocker, int e) const;

  std::vector<double> weights() const;
  std::vector<Activity> activities() const;

  InstanceSequence WithActivities(std::span<const Activity> activities) const;
  InstanceSequence WithWeights(std::span<const double> weights) const;
  // order[i] arrives at slot i + 1.
  InstanceSequence WithArrivalOrder(std::span<const int> order) const;

 private:
  std::vector<Element> by_id_;
  std::vector<int> order_;
  std::vector<int> position_;
};

struct Edge {
  int u = 0;
  int v = 0;
};

enum class FamilyKind { kRank1, kMatching, kKnapsack, kCustom };

using FeasibilityOracle = std::function<bool(std::span<const int>)>;

// A downward-closed set system over elements 0..m-1.
class ConstraintFamily {
 public:
  static ConstraintFamily Rank1(int m);
  // One edge per element; vertices are arbitrary non-negative ids.
  static ConstraintFamily Matching(std::vector<Edge> edges);
  static ConstraintFamily Knapsack(std::vector<double> sizes, double budget);
  // User-supplied independence oracle, e.g. a general matroid. The oracle
  // must describe a downward-closed family. No closed-form polytope.
  static ConstraintFamily Custom(int m, FeasibilityOracle oracle,
                                 std::string name);

  FamilyKind kind() const { return kind_; }
  std::string_view name() const { return name_; }
  int size() const { return m_; }

  const std::vector<Edge>& edges() const { return edges_; }
  int num_vertices() const { return num_vertices_; }
  const std::vector<double>& sizes() const { return sizes_; }
  double budget() const { return budget_; }

  bool has_closed_form_polytope() const { return kind_ != FamilyKind::kCustom; }

  // Independence test. Entries of `set` must be valid, distinct ids.
  bool Contains(std::span<const int> set) const;

 private:
  ConstraintFamily() = default;

  FamilyKind kind_ = FamilyKind::kRank1;
  std::string name_;
  int m_ = 0;
  std::vector<Edge> edges_;
  int num_vertices_ = 0;
  std::vector<double> sizes_;
  double budget_ = 0.0;
  FeasibilityOracle oracle_;
};

// x in [0,1]^m, optionally tagged with the scale b it was certified against.
class FractionalPoint {
 public:
  FractionalPoint() = default;
  // Throws InputError if any coordinate is outside [0, 1] or not finite.
  explicit FractionalPoint(std::vector<double> values,
                           std::optional<double> scale_hint = std::nullopt);
  static FractionalPoint Zeros(int m);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int e) const { return values_[e]; }
  std::span<const double> values() const { return values_; }
  std::optional<double> scale_hint() const { return scale_hint_; }

 private:
  std::vector<double> values_;
  std::optional<double> scale_hint_;
};

// Sparse row a . x <= rhs.
struct LinearRow {
  std::vector<int> index;
  std::vector<double> coeff;
  double rhs = 0.0;

  double Dot(std::span<const double> x) const;
};

// { x in [0,1]^dim : every row holds }.
class LinearConstraints {
 public:
  explicit LinearConstraints(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<LinearRow>& rows() const { return rows_; }

  // Identical rows are stored once.
  void AddRow(LinearRow row);

  // Largest violation over rows and the box; 0 when feasible.
  double MaxViolation(std::span<const double> x) const;
  bool Contains(std::span<const double> x,
                double tolerance = kPolytopeTolerance) const {
    return MaxViolation(x) <= tolerance;
  }

 private:
  int dim_;
  std::vector<LinearRow> rows_;
};

// S in I. Throws InputError for ids outside [0, m).
bool IsFeasible(std::span<const int> set, const ConstraintFamily& family);

// E_e, ascending ids. Always contains e.
ElementSet ActiveElements(int e, const InstanceSequence& seq);

// S intersected with E_e is independent for every e.
bool IsTemporallyFeasible(std::span<const int> set, const InstanceSequence& seq,
                          const ConstraintFamily& family);

// Closed-form rows of b * P_F. b must lie in (0, 1].
LinearConstraints PolytopeConstraints(const ConstraintFamily& family, double b);
// Closed-form rows of b * P^d_F: the family's rows restricted to each active
// set E_e.
LinearConstraints TemporalPolytopeConstraints(const ConstraintFamily& family,
                                              const InstanceSequence& seq,
                                              double b);

bool InPolytope(const FractionalPoint& x, const ConstraintFamily& family,
                double b);
bool InTemporalPolytope(const FractionalPoint& x, const InstanceSequence& seq,
                        const ConstraintFamily& family, double b);

// Sorted union of `set` and {e}.
ElementSet WithElement(std::span<const int> set, int e);

}  // namespace dynsel

#endif  // DYNSEL_CONSTRAINTS_H_
