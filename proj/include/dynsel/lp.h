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

// Linear objectives over the temporal packing polytopes, and the
// ex-ante LP for bipartite matching with reusable machines:
//
//   max   sum_{u,v} wbar_uv x_uv
//   s.t.  sum_u x_uv <= 1                                          for all v
//         sum_{v' < v} x_uv' Pr[d_uv' >= s_v - s_v'] + x_uv <= 1    for all u,
//         v x >= 0.

#ifndef DYNSEL_LP_H_
#define DYNSEL_LP_H_

#include <span>

#include "dynsel/constraints.h"
#include "dynsel/matching_instance.h"
#include "dynsel/simplex.h"

namespace dynsel {

inline constexpr double kLpTolerance = 1e-8;

struct LpSolution {
  FractionalPoint x;
  double objective = 0.0;
  LpStatus status = LpStatus::kOptimal;
};

// max <w, x> over { x in [0,1]^m : rows }.
LpSolution MaximizeLinear(const LinearConstraints& constraints,
                          std::span<const double> w);

// max <w, x> over b * P^d_F. Throws InputError for negative weights, b
// outside (0, 1], or a family without a closed-form polytope.
LpSolution SolveFractional(const ConstraintFamily& family,
                           const InstanceSequence& seq,
                           std::span<const double> w, double b);

// Rows of the matching LP in LinearConstraints form (x_uv at Var(u, v)).
LinearConstraints MatchingLpConstraints(const MatchingInstance& instance);

LpSolution SolveMatchingLp(const MatchingInstance& instance);

}  // namespace dynsel

#endif  // DYNSEL_LP_H_
