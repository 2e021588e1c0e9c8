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

#include "dynsel/lp.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dynsel/errors.h"

namespace dynsel {

LpSolution MaximizeLinear(const LinearConstraints& constraints,
                          std::span<const double> w) {
  const int n = constraints.dim();
  if (static_cast<int>(w.size()) != n) {
    throw InputError("weight vector length does not match the polytope");
  }
  DenseLp lp;
  lp.num_vars = n;
  lp.objective.assign(w.begin(), w.end());
  for (const LinearRow& row : constraints.rows()) {
    DenseRow dense;
    dense.coeff.assign(n, 0.0);
    for (size_t k = 0; k < row.index.size(); ++k) {
      dense.coeff[row.index[k]] += row.coeff[k];
    }
    dense.rhs = row.rhs;
    lp.rows.push_back(std::move(dense));
  }
  // x <= 1; x >= 0 is implicit.
  for (int e = 0; e < n; ++e) {
    DenseRow bound;
    bound.coeff.assign(n, 0.0);
    bound.coeff[e] = 1.0;
    bound.rhs = 1.0;
    lp.rows.push_back(std::move(bound));
  }

  const SimplexResult solved = SolveSimplex(lp);
  if (solved.status != LpStatus::kOptimal) {
    throw InvariantViolation("packing LP was not solved to optimality");
  }
  std::vector<double> x = solved.x;
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  // Round-off can leave a row a hair above its bound; scale it back.
  double scale = 1.0;
  for (const LinearRow& row : constraints.rows()) {
    const double lhs = row.Dot(x);
    if (lhs > row.rhs && lhs > 0.0) scale = std::min(scale, row.rhs / lhs);
  }
  if (scale < 1.0) {
    if (scale < 1.0 - 1e-7) {
      throw InvariantViolation("simplex returned an infeasible point");
    }
    for (double& v : x) v *= scale;
  }
  LpSolution out;
  out.objective = 0.0;
  for (int e = 0; e < n; ++e) out.objective += w[e] * x[e];
  out.x = FractionalPoint(std::move(x));
  out.status = LpStatus::kOptimal;
  return out;
}

LpSolution SolveFractional(const ConstraintFamily& family,
                           const InstanceSequence& seq,
                           std::span<const double> w, double b) {
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InputError("objective weights must be finite and non-negative");
    }
  }
  LpSolution sol =
      MaximizeLinear(TemporalPolytopeConstraints(family, seq, b), w);
  sol.x = FractionalPoint(
      std::vector<double>(sol.x.values().begin(), sol.x.values().end()), b);
  return sol;
}

LinearConstraints MatchingLpConstraints(const MatchingInstance& instance) {
  const int num_u = instance.num_machines();
  const int num_v = instance.num_jobs();
  LinearConstraints out(instance.num_vars());
  for (int v = 0; v < num_v; ++v) {
    LinearRow row;
    for (int u = 0; u < num_u; ++u) {
      row.index.push_back(instance.Var(u, v));
      row.coeff.push_back(1.0);
    }
    row.rhs = 1.0;
    out.AddRow(std::move(row));
  }
  for (int u = 0; u < num_u; ++u) {
    for (int v = 0; v < num_v; ++v) {
      LinearRow row;
      for (int earlier = 0; earlier < v; ++earlier) {
        const double p = instance.BlockProbability(earlier, v);
        if (p == 0.0) continue;
        row.index.push_back(instance.Var(u, earlier));
        row.coeff.push_back(p);
      }
      row.index.push_back(instance.Var(u, v));
      row.coeff.push_back(1.0);
      row.rhs = 1.0;
      out.AddRow(std::move(row));
    }
  }
  return out;
}

LpSolution SolveMatchingLp(const MatchingInstance& instance) {
  std::vector<double> w(instance.num_vars());
  for (int v = 0; v < instance.num_jobs(); ++v) {
    for (int u = 0; u < instance.num_machines(); ++u) {
      w[instance.Var(u, v)] = instance.job(v).weights[u];
    }
  }
  return MaximizeLinear(MatchingLpConstraints(instance), w);
}

}  // namespace dynsel
