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

// Greedy online contention resolution schemes.
//
// A greedy OCRS fixes a random packing subfamily F_{pi,x} of the constraint
// family when it is initialized with x, then accepts an arriving sampled
// element iff the selection stays inside that subfamily. Both built-in
// schemes draw a random set H(x) with Pr[e in H] = (1 - e^{-x_e}) / x_e and
// use F_{pi,x} = { S in F : S subset of H(x) }.
//
// All coins are keyed by element id, never by arrival position.

#ifndef DYNSEL_OCRS_H_
#define DYNSEL_OCRS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynsel/constraints.h"

namespace dynsel {

// A scheme is (b, c)-selectable: for x in b * P every element stays
// selectable with probability at least c.
struct SchemeConstants {
  double b = 1.0;
  double c = 0.0;
};

// Metadata for schemes that are not built in.
SchemeConstants KnapsackOcrsConstants(double b);
SchemeConstants MatroidOcrsConstants(double b);

// (1 - e^{-x}) / x, with the limit 1 at x = 0.
double AcceptRatio(double x);

// True iff e is in R(x) under `seed`.
bool IsSampled(const FractionalPoint& x, int e, uint64_t seed);
// R(x): each e independently with probability x_e.
ElementSet SampleR(const FractionalPoint& x, uint64_t seed);

class GreedyOcrs {
 public:
  explicit GreedyOcrs(ConstraintFamily family) : family_(std::move(family)) {}
  virtual ~GreedyOcrs() = default;

  virtual std::string_view name() const = 0;
  virtual SchemeConstants constants() const = 0;

  // Fixes x and draws the random subfamily.
  virtual void Init(const FractionalPoint& x, uint64_t seed) = 0;

  // S in F_{pi,x} for the current draw.
  virtual bool InSubfamily(std::span<const int> set) const = 0;
  bool InFamily(std::span<const int> set) const {
    return family_.Contains(set);
  }

  // Accept/reject for e given the elements that currently block it.
  virtual bool Observe(int e, bool sampled,
                       std::span<const int> blocking) const;

  // Pr[accept e | e sampled, e feasible].
  virtual double AcceptProbability(int e) const = 0;
  // Pr[accept e | e feasible], sampling included.
  virtual double SelectionProbability(int e) const = 0;

  // True if every set that leaves the subfamily contains a violating pair
  // or a single element that is excluded on its own.
  virtual bool ConflictsArePairwise() const { return false; }

  const ConstraintFamily& family() const { return family_; }
  const FractionalPoint& x() const { return x_; }

 protected:
  ConstraintFamily family_;
  FractionalPoint x_;
};

// F_{pi,x} = { S in F : S subset of H(x) }.
class SubsampledOcrs : public GreedyOcrs {
 public:
  using GreedyOcrs::GreedyOcrs;

  void Init(const FractionalPoint& x, uint64_t seed) override;
  // Fixes H(x) explicitly; used by exhaustive enumeration.
  void InitWithDraw(const FractionalPoint& x, std::vector<bool> in_h);

  bool InSubfamily(std::span<const int> set) const override;
  double AcceptProbability(int e) const override;
  double SelectionProbability(int e) const override;
  bool ConflictsArePairwise() const override;

  bool in_h(int e) const { return in_h_[e]; }

 private:
  std::vector<bool> in_h_;
};

// Single-choice: F_{pi,x} = {empty} u { {e} : e in H(x) }. (1, 1/e).
class Rank1Ocrs : public SubsampledOcrs {
 public:
  explicit Rank1Ocrs(int m);
  std::string_view name() const override { return "rank1"; }
  SchemeConstants constants() const override;
};

// Matchings inside H(x). (b, e^{-2b}).
class MatchingOcrs : public SubsampledOcrs {
 public:
  MatchingOcrs(std::vector<Edge> edges, double b);
  std::string_view name() const override { return "matching"; }
  SchemeConstants constants() const override;

 private:
  double b_;
};

// Builds the built-in scheme for `family`. Throws InputError for families
// without one (knapsack, custom).
std::unique_ptr<GreedyOcrs> MakeOcrs(const ConstraintFamily& family, double b);

struct TranscriptEntry {
  int id = 0;
  double x = 0.0;
  bool sampled = false;
  // The parent family accepts e on top of the blocking elements.
  bool feasible_at_arrival = false;
  // The scheme's subfamily accepts e on top of the blocking elements.
  bool in_subfamily = false;
  // The base scheme was asked to decide on e.
  bool consulted = false;
  bool accepted = false;
  // Acceptance probability given the prefix: AcceptProbability(e) if e was
  // feasible, else 0.
  double accept_probability = 0.0;
  double selection_probability = 0.0;
  // Filled when selectability tracking is requested.
  std::optional<bool> selectable;
};

struct SelectionTranscript {
  // In arrival order.
  std::vector<TranscriptEntry> entries;

  const TranscriptEntry* Find(int id) const;
  ElementSet Accepted() const;
};

// q(e): Pr[e accepted | realized prefix]. Throws QueryError unless e was
// accepted.
double SelectionProbability(const SelectionTranscript& transcript, int e);

// One JSON object per line, arrival order.
std::string TranscriptToJsonLines(const SelectionTranscript& transcript);

}  // namespace dynsel

#endif  // DYNSEL_OCRS_H_
