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

#include "dynsel/ocrs.h"

#include <cmath>
#include <string>
#include <utility>

#include "dynsel/errors.h"
#include "dynsel/random.h"
#include "json.hpp"

namespace dynsel {

SchemeConstants KnapsackOcrsConstants(double b) {
  return {b, (1.0 - 2.0 * b) / (2.0 - 2.0 * b)};
}

SchemeConstants MatroidOcrsConstants(double b) { return {b, 1.0 - b}; }

double AcceptRatio(double x) {
  if (x <= 0.0) return 1.0;
  return -std::expm1(-x) / x;
}

bool IsSampled(const FractionalPoint& x, int e, uint64_t seed) {
  return KeyedUniform(seed, Stream::kSample, e) < x[e];
}

ElementSet SampleR(const FractionalPoint& x, uint64_t seed) {
  ElementSet r;
  for (int e = 0; e < x.size(); ++e) {
    if (IsSampled(x, e, seed)) r.push_back(e);
  }
  return r;
}

bool GreedyOcrs::Observe(int e, bool sampled,
                         std::span<const int> blocking) const {
  if (!sampled) return false;
  return InSubfamily(WithElement(blocking, e));
}

void SubsampledOcrs::Init(const FractionalPoint& x, uint64_t seed) {
  if (x.size() != family_.size()) {
    throw InputError("point dimension does not match the family");
  }
  std::vector<bool> in_h(x.size());
  for (int e = 0; e < x.size(); ++e) {
    in_h[e] = KeyedUniform(seed, Stream::kSubfamily, e) < AcceptRatio(x[e]);
  }
  InitWithDraw(x, std::move(in_h));
}

void SubsampledOcrs::InitWithDraw(const FractionalPoint& x,
                                  std::vector<bool> in_h) {
  if (x.size() != family_.size() ||
      static_cast<int>(in_h.size()) != family_.size()) {
    throw InputError("point dimension does not match the family");
  }
  x_ = x;
  in_h_ = std::move(in_h);
}

bool SubsampledOcrs::InSubfamily(std::span<const int> set) const {
  for (int e : set) {
    if (!in_h_[e]) return false;
  }
  return family_.Contains(set);
}

double SubsampledOcrs::AcceptProbability(int e) const {
  return AcceptRatio(x_[e]);
}

double SubsampledOcrs::SelectionProbability(int e) const {
  return -std::expm1(-x_[e]);
}

bool SubsampledOcrs::ConflictsArePairwise() const {
  return family_.kind() == FamilyKind::kRank1 ||
         family_.kind() == FamilyKind::kMatching;
}

Rank1Ocrs::Rank1Ocrs(int m) : SubsampledOcrs(ConstraintFamily::Rank1(m)) {}

SchemeConstants Rank1Ocrs::constants() const { return {1.0, std::exp(-1.0)}; }

MatchingOcrs::MatchingOcrs(std::vector<Edge> edges, double b)
    : SubsampledOcrs(ConstraintFamily::Matching(std::move(edges))), b_(b) {
  if (!(b > 0.0 && b <= 1.0)) throw InputError("scale b must lie in (0, 1]");
}

SchemeConstants MatchingOcrs::constants() const {
  return {b_, std::exp(-2.0 * b_)};
}

std::unique_ptr<GreedyOcrs> MakeOcrs(const ConstraintFamily& family, double b) {
  switch (family.kind()) {
    case FamilyKind::kRank1:
      return std::make_unique<Rank1Ocrs>(family.size());
    case FamilyKind::kMatching:
      return std::make_unique<MatchingOcrs>(family.edges(), b);
    default:
      throw InputError("no built-in OCRS for family '" +
                       std::string(family.name()) + "'");
  }
}

const TranscriptEntry* SelectionTranscript::Find(int id) const {
  for (const TranscriptEntry& entry : entries) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

ElementSet SelectionTranscript::Accepted() const {
  ElementSet out;
  for (const TranscriptEntry& entry : entries) {
    if (entry.accepted) out = WithElement(out, entry.id);
  }
  return out;
}

double SelectionProbability(const SelectionTranscript& transcript, int e) {
  const TranscriptEntry* entry = transcript.Find(e);
  if (entry == nullptr || !entry->accepted) {
    throw QueryError("element " + std::to_string(e) +
                     " was not accepted; its selection probability is not "
                     "defined");
  }
  return entry->selection_probability;
}

std::string TranscriptToJsonLines(const SelectionTranscript& transcript) {
  std::string out;
  for (const TranscriptEntry& entry : transcript.entries) {
    nlohmann::ordered_json line;
    line["id"] = entry.id;
    line["x"] = entry.x;
    line["sampled"] = entry.sampled;
    line["feasible_at_arrival"] = entry.feasible_at_arrival;
    line["in_subfamily"] = entry.in_subfamily;
    line["consulted"] = entry.consulted;
    line["accepted"] = entry.accepted;
    line["accept_probability"] = entry.accept_probability;
    if (entry.selectable) line["selectable"] = *entry.selectable;
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace dynsel
