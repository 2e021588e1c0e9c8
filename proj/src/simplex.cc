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

#include "dynsel/simplex.h"

#include <cmath>
#include <limits>

#include "dynsel/errors.h"

namespace dynsel {
namespace {

constexpr double kEps = 1e-11;
constexpr int kMaxPivots = 1000000;

// Tableau with one row per constraint plus the objective row at the end.
// Column `cols` holds the right-hand side.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        data_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, -1) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double& obj(int c) { return at(rows_, c); }
  int& basis(int r) { return basis_[r]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void Pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Maximizes the objective row (stored as reduced costs c_j - z_j) over
  // columns with allowed[c]. Returns false if unbounded.
  bool Optimize(const std::vector<bool>& allowed, int& pivots) {
    while (true) {
      int pc = -1;
      for (int c = 0; c < cols_; ++c) {
        if (allowed[c] && obj(c) > kEps) {
          pc = c;  // Bland: lowest index with positive reduced cost
          break;
        }
      }
      if (pc < 0) return true;
      int pr = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, pc);
        if (a <= kEps) continue;
        const double ratio = rhs(r) / a;
        if (ratio < best - kEps ||
            (ratio <= best + kEps && pr >= 0 && basis_[r] < basis_[pr])) {
          best = std::min(best, ratio);
          pr = r;
        }
      }
      if (pr < 0) return false;
      Pivot(pr, pc);
      if (++pivots > kMaxPivots) {
        throw InvariantViolation("simplex exceeded the pivot limit");
      }
    }
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
  std::vector<int> basis_;
};

}  // namespace

SimplexResult SolveSimplex(const DenseLp& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  if (static_cast<int>(lp.objective.size()) != n) {
    throw InputError("objective length does not match the variable count");
  }

  // Normalize to non-negative right-hand sides.
  std::vector<DenseRow> rows = lp.rows;
  for (DenseRow& row : rows) {
    if (static_cast<int>(row.coeff.size()) != n) {
      throw InputError(
          "constraint row length does not match the variable count");
    }
    if (row.rhs < 0.0) {
      for (double& a : row.coeff) a = -a;
      row.rhs = -row.rhs;
      if (row.sense == RowSense::kLessEqual) {
        row.sense = RowSense::kGreaterEqual;
      } else if (row.sense == RowSense::kGreaterEqual) {
        row.sense = RowSense::kLessEqual;
      }
    }
  }

  // Columns: originals, one slack/surplus per inequality, one artificial
  // per >= or = row.
  int num_slack = 0;
  int num_art = 0;
  for (const DenseRow& row : rows) {
    if (row.sense != RowSense::kEqual) ++num_slack;
    if (row.sense != RowSense::kLessEqual) ++num_art;
  }
  const int cols = n + num_slack + num_art;
  const int first_art = n + num_slack;
  Tableau t(m, cols);
  int slack = n;
  int art = first_art;
  for (int r = 0; r < m; ++r) {
    const DenseRow& row = rows[r];
    for (int c = 0; c < n; ++c) t.at(r, c) = row.coeff[c];
    t.rhs(r) = row.rhs;
    if (row.sense == RowSense::kLessEqual) {
      t.at(r, slack) = 1.0;
      t.basis(r) = slack++;
    } else {
      if (row.sense == RowSense::kGreaterEqual) t.at(r, slack++) = -1.0;
      t.at(r, art) = 1.0;
      t.basis(r) = art++;
    }
  }

  SimplexResult result;
  std::vector<bool> allowed(cols, true);

  // Phase 1: maximize -sum(artificials).
  if (num_art > 0) {
    for (int c = 0; c <= cols; ++c) t.obj(c) = 0.0;
    for (int r = 0; r < m; ++r) {
      if (t.basis(r) < first_art) continue;
      for (int c = 0; c <= cols; ++c) {
        if (c < first_art || c == cols) t.obj(c) += t.at(r, c);
      }
    }
    t.Optimize(allowed, result.pivots);
    if (t.obj(cols) > 1e-9 * std::max(1.0, static_cast<double>(m))) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (int r = 0; r < m; ++r) {
      if (t.basis(r) < first_art) continue;
      for (int c = 0; c < first_art; ++c) {
        if (std::fabs(t.at(r, c)) > kEps) {
          t.Pivot(r, c);
          break;
        }
      }
    }
    for (int c = first_art; c < cols; ++c) allowed[c] = false;
  }

  // Phase 2: reduced costs of the original objective.
  for (int c = 0; c <= cols; ++c) t.obj(c) = 0.0;
  for (int c = 0; c < n; ++c) t.obj(c) = lp.objective[c];
  for (int r = 0; r < m; ++r) {
    const int b = t.basis(r);
    if (b >= n) continue;
    const double cb = lp.objective[b];
    if (cb == 0.0) continue;
    for (int c = 0; c <= cols; ++c) t.obj(c) -= cb * t.at(r, c);
  }
  if (!t.Optimize(allowed, result.pivots)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (t.basis(r) < n) result.x[t.basis(r)] = std::max(0.0, t.rhs(r));
  }
  for (int c = 0; c < n; ++c) result.objective += lp.objective[c] * result.x[c];
  return result;
}

}  // namespace dynsel
