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

// Black-box reduction from a greedy OCRS to a temporal greedy OCRS.
//
// On arrival of e the wrapper intersects the running selection with the
// active set E_e. If adding e keeps that intersection in the scheme's
// subfamily, the base scheme decides on e; otherwise e is discarded.

#ifndef DYNSEL_TEMPORAL_H_
#define DYNSEL_TEMPORAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dynsel/constraints.h"
#include "dynsel/ocrs.h"

namespace dynsel {

struct RunOptions {
  // Verify x against the polytope the scheme was promised.
  bool check_precondition = true;
  // Verify the output against the (temporal) family and throw
  // InvariantViolation on failure.
  bool verify_output = true;
  // Record whether each element was selectable (see IsSelectable).
  bool track_selectability = false;
};

struct RunResult {
  ElementSet selected;
  SelectionTranscript transcript;
};

// Algorithm 1 with `base`. Precondition: x in b * P^d_F where b is the
// scheme's own constant. Throws PreconditionError otherwise.
RunResult RunTemporal(GreedyOcrs& base, const FractionalPoint& x,
                      const InstanceSequence& seq, uint64_t seed,
                      const RunOptions& options = {});

// The base scheme on its own, ignoring activity times: every selected
// element blocks every later one. Precondition: x in b * P_F.
RunResult RunDirect(GreedyOcrs& base, const FractionalPoint& x,
                    const InstanceSequence& seq, uint64_t seed,
                    const RunOptions& options = {});

// Whether e is selectable for an initialized scheme: for every I subset of
// R(x) among the elements active at e and arriving before it, with I in
// F_{pi,x}, the set I u {e} is also in F_{pi,x}. `sampled` is indexed by id.
bool IsSelectable(const GreedyOcrs& scheme, const InstanceSequence& seq,
                  const std::vector<bool>& sampled, int e);
// Same, with every earlier element treated as active (no activity times).
bool IsSelectableIgnoringActivity(const GreedyOcrs& scheme,
                                  const InstanceSequence& seq,
                                  const std::vector<bool>& sampled, int e);

}  // namespace dynsel

#endif  // DYNSEL_TEMPORAL_H_
