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

// Dense two-phase simplex with Bland's rule for small LPs:
//   maximize c . x  subject to  A x (<=|>=|=) b,  x >= 0.

#ifndef DYNSEL_SIMPLEX_H_
#define DYNSEL_SIMPLEX_H_

#include <vector>

namespace dynsel {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct DenseRow {
  std::vector<double> coeff;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

struct DenseLp {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<DenseRow> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct SimplexResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

SimplexResult SolveSimplex(const DenseLp& lp);

}  // namespace dynsel

#endif  // DYNSEL_SIMPLEX_H_
