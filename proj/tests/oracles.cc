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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

namespace dynsel::oracle {

bool ActiveAt(const InstanceSequence& seq, int blocker, int e) {
  const Element& b = seq.element(blocker);
  const int64_t se = seq.element(e).arrival;
  if (b.arrival > se) return false;
  if (b.activity.is_infinite()) return true;
  return se <= b.arrival + b.activity.slots();
}

bool TemporallyFeasible(std::span<const int> set, const InstanceSequence& seq,
                        const ConstraintFamily& family) {
  for (int e : set) {
    std::vector<int> active;
    for (int f : set) {
      if (ActiveAt(seq, f, e)) active.push_back(f);
    }
    std::sort(active.begin(), active.end());
    if (!family.Contains(active)) return false;
  }
  return true;
}

double MaxFixedWeight(const ConstraintFamily& family,
                      const InstanceSequence& seq, std::span<const double> w) {
  const int m = seq.size();
  double best = 0.0;
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> set;
    double value = 0.0;
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1u) {
        set.push_back(e);
        value += w[e];
      }
    }
    if (value > best && TemporallyFeasible(set, seq, family)) best = value;
  }
  return best;
}

GreedyEnumeration EnumerateGreedy(SubsampledOcrs& scheme,
                                  const FractionalPoint& x,
                                  const InstanceSequence& seq, bool temporal) {
  const int m = seq.size();
  const ConstraintFamily& family = scheme.family();
  std::vector<double> keep(m);
  for (int e = 0; e < m; ++e) {
    keep[e] = x[e] > 0.0 ? (1.0 - std::exp(-x[e])) / x[e] : 1.0;
  }
  GreedyEnumeration out;
  out.selected.assign(m, 0.0);
  out.feasible.assign(m, 0.0);
  const uint32_t outcomes = 1u << (2 * m);
  for (uint32_t mask = 0; mask < outcomes; ++mask) {
    std::vector<bool> in_r(m), in_h(m);
    double p = 1.0;
    for (int e = 0; e < m; ++e) {
      in_r[e] = mask >> e & 1u;
      in_h[e] = mask >> (m + e) & 1u;
      p *= in_r[e] ? x[e] : 1.0 - x[e];
      p *= in_h[e] ? keep[e] : 1.0 - keep[e];
    }
    if (p == 0.0) continue;
    out.total_probability += p;
    scheme.InitWithDraw(x, in_h);
    std::vector<int> accepted;
    for (int e : seq.order()) {
      std::vector<int> blocking;
      for (int f : accepted) {
        if (!temporal || ActiveAt(seq, f, e)) blocking.push_back(f);
      }
      std::vector<int> with = blocking;
      with.push_back(e);
      std::sort(with.begin(), with.end());
      std::sort(blocking.begin(), blocking.end());
      const bool feasible = family.Contains(with);
      bool all_in_h = true;
      for (int f : with) all_in_h = all_in_h && in_h[f];
      const bool accept = in_r[e] && feasible && all_in_h;
      if (scheme.Observe(e, in_r[e], blocking) != accept) ++out.mismatches;
      if (feasible) out.feasible[e] += p;
      if (accept) {
        out.selected[e] += p;
        accepted.push_back(e);
      }
    }
  }
  return out;
}

namespace {

// Solves a x = b for a square system; false when singular.
bool SolveSquare(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    if (std::fabs(a[pivot][c]) < 1e-12) return false;
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

}  // namespace

double VertexEnumerationMax(const LinearConstraints& constraints,
                            std::span<const double> w) {
  const int n = constraints.dim();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const LinearRow& row : constraints.rows()) {
    std::vector<double> dense(n, 0.0);
    for (size_t k = 0; k < row.index.size(); ++k) {
      dense[row.index[k]] += row.coeff[k];
    }
    rows.push_back(dense);
    rhs.push_back(row.rhs);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> up(n, 0.0), down(n, 0.0);
    up[i] = 1.0;
    down[i] = -1.0;
    rows.push_back(up);
    rhs.push_back(1.0);
    rows.push_back(down);
    rhs.push_back(0.0);
  }
  const int k = static_cast<int>(rows.size());
  double best = -INFINITY;
  std::vector<int> pick(n);
  std::function<void(int, int)> choose = [&](int depth, int from) {
    if (depth == n) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (int r : pick) {
        a.push_back(rows[r]);
        b.push_back(rhs[r]);
      }
      std::vector<double> v;
      if (!SolveSquare(a, b, v)) return;
      for (int r = 0; r < k; ++r) {
        double lhs = 0.0;
        for (int i = 0; i < n; ++i) lhs += rows[r][i] * v[i];
        if (lhs > rhs[r] + 1e-9) return;
      }
      double value = 0.0;
      for (int i = 0; i < n; ++i) value += w[i] * v[i];
      best = std::max(best, value);
      return;
    }
    for (int r = from; r < k; ++r) {
      pick[depth] = r;
      choose(depth + 1, r + 1);
    }
  };
  choose(0, 0);
  return best;
}

double ExpectedClairvoyantOpt(const MatchingInstance& instance) {
  const int num_u = instance.num_machines();
  const int num_v = instance.num_jobs();
  std::vector<Activity> d(num_v);
  double expectation = 0.0;

  // Best assignment for one realization of the activity times.
  auto best_assignment = [&]() {
    double best = 0.0;
    std::vector<int> machine(num_v, -1);
    std::function<void(int, double)> assign = [&](int v, double value) {
      if (v == num_v) {
        best = std::max(best, value);
        return;
      }
      machine[v] = -1;
      assign(v + 1, value);
      for (int u = 0; u < num_u; ++u) {
        bool free = true;
        for (int p = 0; p < v && free; ++p) {
          if (machine[p] != u) continue;
          const int64_t gap = instance.job(v).arrival - instance.job(p).arrival;
          if (d[p].is_infinite() || d[p].slots() >= gap) free = false;
        }
        if (!free) continue;
        machine[v] = u;
        assign(v + 1, value + instance.job(v).weights[u]);
        machine[v] = -1;
      }
    };
    assign(0, 0.0);
    return best;
  };

  std::function<void(int, double)> realize = [&](int v, double p) {
    if (p == 0.0) return;
    if (v == num_v) {
      expectation += p * best_assignment();
      return;
    }
    for (const ActivityPmf::Atom& atom : instance.job(v).activity.atoms()) {
      d[v] = atom.value;
      realize(v + 1, p * atom.prob);
    }
  };
  realize(0, 1.0);
  return expectation;
}

double ExpectedOfflineOpt(const MatchingInstance& instance) {
  const int num_u = instance.num_machines();
  const int num_v = instance.num_jobs();
  // holder[u] = (job, activity) currently assigned to u, job -1 if none.
  std::vector<int> holder(num_u, -1);
  std::vector<Activity> held(num_u);
  std::function<double(int)> value = [&](int v) -> double {
    if (v == num_v) return 0.0;
    double best = value(v + 1);
    const Job& job = instance.job(v);
    for (int u = 0; u < num_u; ++u) {
      if (holder[u] >= 0) {
        const int64_t gap = job.arrival - instance.job(holder[u]).arrival;
        if (held[u].is_infinite() || held[u].slots() >= gap) continue;
      }
      const int saved_holder = holder[u];
      const Activity saved_held = held[u];
      double expected = 0.0;
      for (const ActivityPmf::Atom& atom : job.activity.atoms()) {
        holder[u] = v;
        held[u] = atom.value;
        expected += atom.prob * (job.weights[u] + value(v + 1));
      }
      holder[u] = saved_holder;
      held[u] = saved_held;
      best = std::max(best, expected);
    }
    return best;
  };
  return value(0);
}

}  // namespace dynsel::oracle
