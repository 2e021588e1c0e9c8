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

#include "dynsel/projection.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynsel/errors.h"

namespace dynsel {
namespace {

void CheckDims(const LinearConstraints& polytope, std::span<const double> y) {
  if (static_cast<int>(y.size()) != polytope.dim()) {
    throw InputError("projection input has the wrong dimension");
  }
  for (const LinearRow& row : polytope.rows()) {
    if (!(row.rhs > 0.0)) {
      throw InputError("projection needs positive right-hand sides");
    }
    for (double a : row.coeff) {
      if (a < 0.0) throw InputError("projection needs non-negative rows");
    }
  }
}

// Sum over the row of a_k * clip(z_k - t a_k, 0, 1).
double ClippedRowSum(const LinearRow& row, std::span<const double> z,
                     double t) {
  double s = 0.0;
  for (size_t k = 0; k < row.index.size(); ++k) {
    const double a = row.coeff[k];
    s += a * std::clamp(z[row.index[k]] - t * a, 0.0, 1.0);
  }
  return s;
}

// Smallest t >= 0 with ClippedRowSum(t) <= rhs. The sum is continuous,
// non-increasing and piecewise linear in t.
double SolveClippedRow(const LinearRow& row, std::span<const double> z) {
  if (ClippedRowSum(row, z, 0.0) <= row.rhs) return 0.0;
  std::vector<double> breaks;
  for (size_t k = 0; k < row.index.size(); ++k) {
    const double a = row.coeff[k];
    if (a <= 0.0) continue;
    const double zk = z[row.index[k]];
    for (double t : {(zk - 1.0) / a, zk / a}) {
      if (t > 0.0) breaks.push_back(t);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  double lo = 0.0;
  double g_lo = ClippedRowSum(row, z, 0.0);
  for (double hi : breaks) {
    const double g_hi = ClippedRowSum(row, z, hi);
    if (g_hi <= row.rhs) {
      if (g_lo == g_hi) return hi;
      return lo + (hi - lo) * (g_lo - row.rhs) / (g_lo - g_hi);
    }
    lo = hi;
    g_lo = g_hi;
  }
  return lo;  // unreachable for rhs > 0: the sum vanishes past all breaks
}

// Sum over the row of a_k * min(1, exp(u_k - t a_k)).
double ExpRowSum(const LinearRow& row, std::span<const double> u, double t) {
  double s = 0.0;
  for (size_t k = 0; k < row.index.size(); ++k) {
    const double a = row.coeff[k];
    s += a * std::min(1.0, std::exp(u[row.index[k]] - t * a));
  }
  return s;
}

double SolveExpRow(const LinearRow& row, std::span<const double> u) {
  if (ExpRowSum(row, u, 0.0) <= row.rhs) return 0.0;
  double hi = 1.0;
  while (ExpRowSum(row, u, hi) > row.rhs) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ExpRowSum(row, u, mid) > row.rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

std::vector<double> ProjectEuclidean(const LinearConstraints& polytope,
                                     std::span<const double> y,
                                     const ProjectionOptions& options) {
  CheckDims(polytope, y);
  const auto& rows = polytope.rows();
  std::vector<double> z(y.begin(), y.end());
  std::vector<double> lambda(rows.size(), 0.0);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double moved = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const LinearRow& row = rows[i];
      for (size_t k = 0; k < row.index.size(); ++k) {
        z[row.index[k]] += lambda[i] * row.coeff[k];
      }
      const double t = SolveClippedRow(row, z);
      for (size_t k = 0; k < row.index.size(); ++k) {
        z[row.index[k]] -= t * row.coeff[k];
      }
      moved = std::max(moved, std::fabs(t - lambda[i]));
      lambda[i] = t;
    }
    if (moved <= options.tolerance) break;
  }
  std::vector<double> x(z.size());
  for (size_t k = 0; k < z.size(); ++k) x[k] = std::clamp(z[k], 0.0, 1.0);
  ShrinkIntoPolytope(polytope, x);
  return x;
}

std::vector<double> ProjectEntropic(const LinearConstraints& polytope,
                                    std::span<const double> y,
                                    const ProjectionOptions& options) {
  CheckDims(polytope, y);
  const auto& rows = polytope.rows();
  std::vector<double> u(y.size());
  for (size_t k = 0; k < y.size(); ++k) {
    if (!(y[k] >= 0.0)) throw InputError("entropic projection needs y >= 0");
    u[k] =
        y[k] > 0.0 ? std::log(y[k]) : -std::numeric_limits<double>::infinity();
  }
  std::vector<double> lambda(rows.size(), 0.0);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double moved = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const LinearRow& row = rows[i];
      for (size_t k = 0; k < row.index.size(); ++k) {
        u[row.index[k]] += lambda[i] * row.coeff[k];
      }
      const double t = SolveExpRow(row, u);
      for (size_t k = 0; k < row.index.size(); ++k) {
        u[row.index[k]] -= t * row.coeff[k];
      }
      moved = std::max(moved, std::fabs(t - lambda[i]));
      lambda[i] = t;
    }
    if (moved <= options.tolerance) break;
  }
  std::vector<double> x(u.size());
  for (size_t k = 0; k < u.size(); ++k) x[k] = std::min(1.0, std::exp(u[k]));
  ShrinkIntoPolytope(polytope, x);
  return x;
}

void ShrinkIntoPolytope(const LinearConstraints& polytope,
                        std::vector<double>& x) {
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    double scale = 1.0;
    for (const LinearRow& row : polytope.rows()) {
      const double lhs = row.Dot(x);
      if (lhs > row.rhs) scale = std::min(scale, row.rhs / lhs);
    }
    if (scale >= 1.0) return;
    scale = std::nextafter(scale, 0.0);
    for (double& v : x) v *= scale;
  }
  throw InvariantViolation("could not scale a point into the polytope");
}

}  // namespace dynsel
