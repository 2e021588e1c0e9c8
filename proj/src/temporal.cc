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

#include "dynsel/temporal.h"

#include <string>
#include <vector>

#include "dynsel/errors.h"

namespace dynsel {
namespace {

// Depth-first search for an independent I among `candidates` such that
// I u {e} leaves the subfamily.
bool FindBlockingSet(const GreedyOcrs& scheme, std::span<const int> candidates,
                     size_t next, ElementSet& current, int e) {
  for (size_t i = next; i < candidates.size(); ++i) {
    ElementSet grown = WithElement(current, candidates[i]);
    if (!scheme.InSubfamily(grown)) continue;
    if (!scheme.InSubfamily(WithElement(grown, e))) return true;
    ElementSet saved = current;
    current = grown;
    if (FindBlockingSet(scheme, candidates, i + 1, current, e)) return true;
    current = saved;
  }
  return false;
}

bool SelectableAmong(const GreedyOcrs& scheme, std::span<const int> candidates,
                     int e) {
  const int self[] = {e};
  if (!scheme.InSubfamily(self)) return false;
  if (scheme.ConflictsArePairwise()) {
    for (int c : candidates) {
      const int single[] = {c};
      if (scheme.InSubfamily(single) &&
          !scheme.InSubfamily(WithElement(single, e))) {
        return false;
      }
    }
    return true;
  }
  ElementSet current;
  return !FindBlockingSet(scheme, candidates, 0, current, e);
}

bool Selectable(const GreedyOcrs& scheme, const InstanceSequence& seq,
                const std::vector<bool>& sampled, int e, bool use_activity) {
  ElementSet candidates;
  const int pos = seq.position(e);
  for (int i = 0; i < pos; ++i) {
    const int c = seq.order()[i];
    if (!sampled[c]) continue;
    if (use_activity && !seq.IsActiveAt(c, e)) continue;
    candidates.push_back(c);
  }
  return SelectableAmong(scheme, candidates, e);
}

void CheckSizes(const GreedyOcrs& base, const FractionalPoint& x,
                const InstanceSequence& seq) {
  if (x.size() != seq.size() || base.family().size() != seq.size()) {
    throw InputError("scheme, point and sequence sizes differ");
  }
}

RunResult Run(GreedyOcrs& base, const FractionalPoint& x,
              const InstanceSequence& seq, uint64_t seed,
              const RunOptions& options, bool temporal) {
  base.Init(x, seed);
  std::vector<bool> sampled_by_id;
  if (options.track_selectability) {
    sampled_by_id.resize(seq.size());
    for (int e = 0; e < seq.size(); ++e) {
      sampled_by_id[e] = IsSampled(x, e, seed);
    }
  }

  RunResult result;
  result.transcript.entries.reserve(seq.size());
  ElementSet blocking;
  for (int e : seq.order()) {
    blocking.clear();
    for (int s : result.selected) {
      if (!temporal || seq.IsActiveAt(s, e)) blocking.push_back(s);
    }
    TranscriptEntry entry;
    entry.id = e;
    entry.x = x[e];
    entry.sampled = IsSampled(x, e, seed);
    const ElementSet with_e = WithElement(blocking, e);
    entry.feasible_at_arrival = base.InFamily(with_e);
    entry.in_subfamily = base.InSubfamily(with_e);
    entry.consulted = entry.in_subfamily;
    if (entry.consulted) {
      entry.accepted = base.Observe(e, entry.sampled, blocking);
    }
    if (entry.feasible_at_arrival) {
      entry.accept_probability = base.AcceptProbability(e);
      entry.selection_probability = base.SelectionProbability(e);
    }
    if (options.track_selectability) {
      entry.selectable = Selectable(base, seq, sampled_by_id, e, temporal);
    }
    if (entry.accepted) result.selected = WithElement(result.selected, e);
    result.transcript.entries.push_back(entry);
  }

  if (options.verify_output) {
    const bool ok =
        temporal ? IsTemporallyFeasible(result.selected, seq, base.family())
                 : base.family().Contains(result.selected);
    if (!ok) {
      throw InvariantViolation("scheme '" + std::string(base.name()) +
                               "' produced an infeasible selection");
    }
  }
  return result;
}

}  // namespace

RunResult RunTemporal(GreedyOcrs& base, const FractionalPoint& x,
                      const InstanceSequence& seq, uint64_t seed,
                      const RunOptions& options) {
  CheckSizes(base, x, seq);
  if (options.check_precondition &&
      !InTemporalPolytope(x, seq, base.family(), base.constants().b)) {
    throw PreconditionError("x is outside the scaled temporal polytope");
  }
  return Run(base, x, seq, seed, options, /*temporal=*/true);
}

RunResult RunDirect(GreedyOcrs& base, const FractionalPoint& x,
                    const InstanceSequence& seq, uint64_t seed,
                    const RunOptions& options) {
  CheckSizes(base, x, seq);
  if (options.check_precondition &&
      !InPolytope(x, base.family(), base.constants().b)) {
    throw PreconditionError("x is outside the scaled polytope");
  }
  return Run(base, x, seq, seed, options, /*temporal=*/false);
}

bool IsSelectable(const GreedyOcrs& scheme, const InstanceSequence& seq,
                  const std::vector<bool>& sampled, int e) {
  return Selectable(scheme, seq, sampled, e, /*use_activity=*/true);
}

bool IsSelectableIgnoringActivity(const GreedyOcrs& scheme,
                                  const InstanceSequence& seq,
                                  const std::vector<bool>& sampled, int e) {
  return Selectable(scheme, seq, sampled, e, /*use_activity=*/false);
}

}  // namespace dynsel
