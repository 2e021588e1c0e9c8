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

// Projections onto packing polytopes { x in [0,1]^n : A x <= r } with
// A >= 0, r > 0. Both run coordinate ascent on the dual, one multiplier per
// row, with the box handled in closed form. A final scale toward the origin
// makes the result exactly feasible.

#ifndef DYNSEL_PROJECTION_H_
#define DYNSEL_PROJECTION_H_

#include <span>
#include <vector>

#include "dynsel/constraints.h"

namespace dynsel {

struct ProjectionOptions {
  int max_sweeps = 2000;
  // Stop when no multiplier moves by more than this.
  double tolerance = 1e-12;
};

// argmin ||x - y||_2 over the polytope.
std::vector<double> ProjectEuclidean(const LinearConstraints& polytope,
                                     std::span<const double> y,
                                     const ProjectionOptions& options = {});

// argmin sum_k x_k log(x_k / y_k) - x_k + y_k over the polytope, for y > 0.
std::vector<double> ProjectEntropic(const LinearConstraints& polytope,
                                    std::span<const double> y,
                                    const ProjectionOptions& options = {});

// Scales x toward 0 until every row holds exactly; clips to the box first.
void ShrinkIntoPolytope(const LinearConstraints& polytope,
                        std::vector<double>& x);

}  // namespace dynsel

#endif  // DYNSEL_PROJECTION_H_
