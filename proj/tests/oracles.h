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

// Slow reference implementations used only by the tests. They share no code
// paths with the library beyond the input types.

#ifndef DYNSEL_TESTS_ORACLES_H_
#define DYNSEL_TESTS_ORACLES_H_

#include <span>
#include <vector>

#include "dynsel/constraints.h"
#include "dynsel/matching_instance.h"
#include "dynsel/ocrs.h"

namespace dynsel::oracle {

// True if `blocker` arrived no later than `e` and is still active at s_e.
bool ActiveAt(const InstanceSequence& seq, int blocker, int e);

bool TemporallyFeasible(std::span<const int> set, const InstanceSequence& seq,
                        const ConstraintFamily& family);

// max of sum_{e in S} w_e over temporally feasible S, by enumeration.
double MaxFixedWeight(const ConstraintFamily& family,
                      const InstanceSequence& seq, std::span<const double> w);

struct GreedyEnumeration {
  std::vector<double> selected;  // Pr[e accepted]
  std::vector<double> feasible;  // Pr[blocking set plus e is independent]
  // Outcomes where the scheme's own decision rule disagreed with the
  // reference rule.
  int mismatches = 0;
  double total_probability = 0.0;
};

// Exhaustive expectation over the 4^m outcomes of the sample coins
// (Pr[e in R] = x_e) and subfamily coins (Pr[e in H] = (1 - e^{-x_e}) / x_e).
// With `temporal` the blocking set of e is the accepted elements still
// active at s_e, otherwise all accepted elements. `scheme` is driven through
// InitWithDraw and Observe and compared against the reference rule.
GreedyEnumeration EnumerateGreedy(SubsampledOcrs& scheme,
                                  const FractionalPoint& x,
                                  const InstanceSequence& seq, bool temporal);

// max <w, x> over {x in [0,1]^n : row . x <= rhs} by enumerating vertices.
// Suitable for n <= 3.
double VertexEnumerationMax(const LinearConstraints& constraints,
                            std::span<const double> w);

// E[offline optimum] for the reusable-machine matching problem. The
// optimum knows every job and weight in advance and learns a job's activity
// time once it assigns the job, so each assignment is independent of the
// job's own activity. Exhaustive expectimax. A job on machine u blocks a
// later job on u when its activity is at least the arrival gap.
double ExpectedOfflineOpt(const MatchingInstance& instance);

// Same, but the optimum also knows every activity time in advance.
double ExpectedClairvoyantOpt(const MatchingInstance& instance);

}  // namespace dynsel::oracle

#endif  // DYNSEL_TESTS_ORACLES_H_
