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

#include "dynsel/constraints.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "dynsel/errors.h"

namespace dynsel {
namespace {

void CheckScale(double b) {
  if (!(b > 0.0 && b <= 1.0)) {
    throw InputError("scale b must lie in (0, 1], got " + std::to_string(b));
  }
}

void CheckIds(std::span<const int> set, int m) {
  for (int e : set) {
    if (e < 0 || e >= m) {
      throw InputError("element id " + std::to_string(e) +
                       " out of range [0, " + std::to_string(m) + ")");
    }
  }
}

// Rows of the family restricted to `subset` (ascending ids), at scale b.
void AppendRestrictedRows(const ConstraintFamily& family,
                          std::span<const int> subset, double b,
                          LinearConstraints& out) {
  switch (family.kind()) {
    case FamilyKind::kRank1: {
      LinearRow row;
      row.index.assign(subset.begin(), subset.end());
      row.coeff.assign(subset.size(), 1.0);
      row.rhs = b;
      out.AddRow(std::move(row));
      break;
    }
    case FamilyKind::kKnapsack: {
      LinearRow row;
      for (int e : subset) {
        if (family.sizes()[e] == 0.0) continue;
        row.index.push_back(e);
        row.coeff.push_back(family.sizes()[e]);
      }
      row.rhs = b * family.budget();
      out.AddRow(std::move(row));
      break;
    }
    case FamilyKind::kMatching: {
      // One degree row per vertex touched by the subset.
      std::vector<std::pair<int, int>> incidences;
      for (int e : subset) {
        incidences.emplace_back(family.edges()[e].u, e);
        incidences.emplace_back(family.edges()[e].v, e);
      }
      std::sort(incidences.begin(), incidences.end());
      for (size_t i = 0; i < incidences.size();) {
        LinearRow row;
        size_t j = i;
        for (; j < incidences.size() &&
               incidences[j].first == incidences[i].first;
             ++j) {
          row.index.push_back(incidences[j].second);
          row.coeff.push_back(1.0);
        }
        row.rhs = b;
        out.AddRow(std::move(row));
        i = j;
      }
      break;
    }
    case FamilyKind::kCustom:
      throw InputError("family '" + std::string(family.name()) +
                       "' has no closed-form polytope");
  }
}

}  // namespace

Activity Activity::Finite(int64_t slots) {
  if (slots < 0) {
    throw InputError("activity must be non-negative, got " +
                     std::to_string(slots));
  }
  return Activity(slots, false);
}

Activity Activity::FromEncoded(int64_t encoded) {
  if (encoded == -1) return Infinite();
  return Finite(encoded);
}

InstanceSequence::InstanceSequence(std::vector<Element> elements) {
  const int m = static_cast<int>(elements.size());
  by_id_.resize(m);
  std::vector<bool> seen_id(m, false);
  std::vector<bool> seen_slot(m + 1, false);
  for (const Element& el : elements) {
    if (el.id < 0 || el.id >= m || seen_id[el.id]) {
      throw InputError("element ids must be a permutation of 0..m-1 (bad id " +
                       std::to_string(el.id) + ")");
    }
    if (el.arrival < 1 || el.arrival > m || seen_slot[el.arrival]) {
      throw InputError("arrival slots must be distinct, in [1, m] (bad slot " +
                       std::to_string(el.arrival) + ")");
    }
    if (!(el.weight >= 0.0) || !std::isfinite(el.weight)) {
      throw InputError("element weights must be finite and non-negative");
    }
    seen_id[el.id] = true;
    seen_slot[el.arrival] = true;
    by_id_[el.id] = el;
  }
  order_.resize(m);
  for (int i = 0; i < m; ++i) order_[i] = i;
  std::sort(order_.begin(), order_.end(), [this](int a, int b) {
    return by_id_[a].arrival < by_id_[b].arrival;
  });
  position_.resize(m);
  for (int i = 0; i < m; ++i) position_[order_[i]] = i;
}

bool InstanceSequence::IsActiveAt(int blocker, int e) const {
  const Element& b = by_id_[blocker];
  const int64_t at = by_id_[e].arrival;
  return b.arrival <= at && b.activity.Covers(at - b.arrival);
}

std::vector<double> InstanceSequence::weights() const {
  std::vector<double> w(by_id_.size());
  for (const Element& el : by_id_) w[el.id] = el.weight;
  return w;
}

std::vector<Activity> InstanceSequence::activities() const {
  std::vector<Activity> d(by_id_.size());
  for (const Element& el : by_id_) d[el.id] = el.activity;
  return d;
}

InstanceSequence InstanceSequence::WithActivities(
    std::span<const Activity> activities) const {
  if (static_cast<int>(activities.size()) != size()) {
    throw InputError("activity vector length mismatch");
  }
  std::vector<Element> copy = by_id_;
  for (Element& el : copy) el.activity = activities[el.id];
  return InstanceSequence(std::move(copy));
}

InstanceSequence InstanceSequence::WithWeights(
    std::span<const double> weights) const {
  if (static_cast<int>(weights.size()) != size()) {
    throw InputError("weight vector length mismatch");
  }
  std::vector<Element> copy = by_id_;
  for (Element& el : copy) el.weight = weights[el.id];
  return InstanceSequence(std::move(copy));
}

InstanceSequence InstanceSequence::WithArrivalOrder(
    std::span<const int> order) const {
  if (static_cast<int>(order.size()) != size()) {
    throw InputError("arrival order length mismatch");
  }
  std::vector<Element> copy = by_id_;
  for (int i = 0; i < size(); ++i) {
    CheckIds(order.subspan(i, 1), size());
    copy[order[i]].arrival = i + 1;
  }
  return InstanceSequence(std::move(copy));
}

ConstraintFamily ConstraintFamily::Rank1(int m) {
  ConstraintFamily f;
  f.kind_ = FamilyKind::kRank1;
  f.name_ = "rank1";
  f.m_ = m;
  return f;
}

ConstraintFamily ConstraintFamily::Matching(std::vector<Edge> edges) {
  ConstraintFamily f;
  f.kind_ = FamilyKind::kMatching;
  f.name_ = "matching";
  f.m_ = static_cast<int>(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u == e.v) {
      throw InputError(
          "matching edges need two distinct non-negative vertices");
    }
    f.num_vertices_ = std::max({f.num_vertices_, e.u + 1, e.v + 1});
  }
  f.edges_ = std::move(edges);
  return f;
}

ConstraintFamily ConstraintFamily::Knapsack(std::vector<double> sizes,
                                            double budget) {
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw InputError("knapsack budget must be positive");
  }
  for (double c : sizes) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw InputError("knapsack sizes must be finite and non-negative");
    }
  }
  ConstraintFamily f;
  f.kind_ = FamilyKind::kKnapsack;
  f.name_ = "knapsack";
  f.m_ = static_cast<int>(sizes.size());
  f.sizes_ = std::move(sizes);
  f.budget_ = budget;
  return f;
}

ConstraintFamily ConstraintFamily::Custom(int m, FeasibilityOracle oracle,
                                          std::string name) {
  if (!oracle) throw InputError("custom family needs an oracle");
  ConstraintFamily f;
  f.kind_ = FamilyKind::kCustom;
  f.name_ = std::move(name);
  f.m_ = m;
  f.oracle_ = std::move(oracle);
  return f;
}

bool ConstraintFamily::Contains(std::span<const int> set) const {
  switch (kind_) {
    case FamilyKind::kRank1:
      return set.size() <= 1;
    case FamilyKind::kKnapsack: {
      double total = 0.0;
      for (int e : set) total += sizes_[e];
      return total <= budget_ + kPolytopeTolerance;
    }
    case FamilyKind::kMatching: {
      // Sets are tiny; quadratic scan avoids allocation.
      for (size_t i = 0; i < set.size(); ++i) {
        const Edge& a = edges_[set[i]];
        for (size_t j = i + 1; j < set.size(); ++j) {
          const Edge& b = edges_[set[j]];
          if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
            return false;
          }
        }
      }
      return true;
    }
    case FamilyKind::kCustom:
      return oracle_(set);
  }
  return false;
}

FractionalPoint::FractionalPoint(std::vector<double> values,
                                 std::optional<double> scale_hint)
    : values_(std::move(values)), scale_hint_(scale_hint) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError("fractional point coordinates must lie in [0, 1]");
    }
  }
  if (scale_hint_ && !(*scale_hint_ > 0.0 && *scale_hint_ <= 1.0)) {
    throw InputError("scale hint must lie in (0, 1]");
  }
}

FractionalPoint FractionalPoint::Zeros(int m) {
  return FractionalPoint(std::vector<double>(m, 0.0));
}

double LinearRow::Dot(std::span<const double> x) const {
  double s = 0.0;
  for (size_t k = 0; k < index.size(); ++k) s += coeff[k] * x[index[k]];
  return s;
}

void LinearConstraints::AddRow(LinearRow row) {
  if (row.index.empty()) return;  // 0 <= rhs always holds for rhs >= 0
  for (const LinearRow& r : rows_) {
    if (r.rhs == row.rhs && r.index == row.index && r.coeff == row.coeff) {
      return;
    }
  }
  rows_.push_back(std::move(row));
}

double LinearConstraints::MaxViolation(std::span<const double> x) const {
  double worst = 0.0;
  for (double v : x) {
    worst = std::max({worst, -v, v - 1.0});
  }
  for (const LinearRow& r : rows_) {
    worst = std::max(worst, r.Dot(x) - r.rhs);
  }
  return worst;
}

bool IsFeasible(std::span<const int> set, const ConstraintFamily& family) {
  CheckIds(set, family.size());
  return family.Contains(set);
}

ElementSet ActiveElements(int e, const InstanceSequence& seq) {
  CheckIds(std::span<const int>(&e, 1), seq.size());
  ElementSet active;
  for (int other = 0; other < seq.size(); ++other) {
    if (seq.IsActiveAt(other, e)) active.push_back(other);
  }
  return active;
}

bool IsTemporallyFeasible(std::span<const int> set, const InstanceSequence& seq,
                          const ConstraintFamily& family) {
  CheckIds(set, family.size());
  if (seq.size() != family.size()) {
    throw InputError("sequence and family sizes differ");
  }
  ElementSet restricted;
  for (int e = 0; e < seq.size(); ++e) {
    restricted.clear();
    for (int s : set) {
      if (seq.IsActiveAt(s, e)) restricted.push_back(s);
    }
    if (!family.Contains(restricted)) return false;
  }
  return true;
}

LinearConstraints PolytopeConstraints(const ConstraintFamily& family,
                                      double b) {
  CheckScale(b);
  LinearConstraints out(family.size());
  ElementSet all(family.size());
  for (int e = 0; e < family.size(); ++e) all[e] = e;
  AppendRestrictedRows(family, all, b, out);
  return out;
}

LinearConstraints TemporalPolytopeConstraints(const ConstraintFamily& family,
                                              const InstanceSequence& seq,
                                              double b) {
  CheckScale(b);
  if (seq.size() != family.size()) {
    throw InputError("sequence and family sizes differ");
  }
  LinearConstraints out(family.size());
  for (int e = 0; e < seq.size(); ++e) {
    AppendRestrictedRows(family, ActiveElements(e, seq), b, out);
  }
  return out;
}

bool InPolytope(const FractionalPoint& x, const ConstraintFamily& family,
                double b) {
  if (x.size() != family.size()) throw InputError("point dimension mismatch");
  return PolytopeConstraints(family, b).Contains(x.values());
}

bool InTemporalPolytope(const FractionalPoint& x, const InstanceSequence& seq,
                        const ConstraintFamily& family, double b) {
  if (x.size() != family.size()) throw InputError("point dimension mismatch");
  return TemporalPolytopeConstraints(family, seq, b).Contains(x.values());
}

ElementSet WithElement(std::span<const int> set, int e) {
  ElementSet out(set.begin(), set.end());
  out.insert(std::lower_bound(out.begin(), out.end(), e), e);
  return out;
}

}  // namespace dynsel
