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

// Online bipartite matching with reusable machines driven by the ex-ante LP.
//
// On arrival of job v each available machine u is chosen with probability
// alpha * x_uv / Pr[u available at v], so that u is matched to v with
// unconditional probability exactly alpha * x_uv.

#ifndef DYNSEL_BATCHED_H_
#define DYNSEL_BATCHED_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dynsel/matching_instance.h"

namespace dynsel {

// Pr[u available at v] under the algorithm's own randomness.
class AvailabilityTable {
 public:
  AvailabilityTable(int num_machines, int num_jobs)
      : num_machines_(num_machines), p_(num_machines * num_jobs, 1.0) {}

  double at(int u, int v) const { return p_[v * num_machines_ + u]; }
  double& at(int u, int v) { return p_[v * num_machines_ + u]; }
  double Min() const;

 private:
  int num_machines_;
  std::vector<double> p_;
};

// Exact forward recursion
//   Pr[u not available at v] = alpha * sum_{v' < v} x_uv' Pr[d_uv' >= s_v -
//   s_v'].
// Throws InvariantViolation if some entry falls below alpha - 1e-9.
AvailabilityTable ComputeAvailability(const MatchingInstance& instance,
                                      std::span<const double> x, double alpha);

struct MatchingRun {
  // Machine matched to each job, -1 if rejected.
  std::vector<int> machine_of_job;
  // Realized activity time of each job (drawn whether or not it is matched).
  std::vector<Activity> activity_of_job;
  double reward = 0.0;
};

// One run with coins keyed by `seed`. Requires alpha in (0, 1/2].
// Throws InvariantViolation if the per-job selection probabilities exceed 1.
MatchingRun RunBatchedMatching(const MatchingInstance& instance,
                               std::span<const double> x,
                               const AvailabilityTable& table, double alpha,
                               uint64_t seed);

// True if no job was placed on a machine still held by an earlier job.
bool IsFeasibleMatching(const MatchingInstance& instance,
                        const MatchingRun& run);

}  // namespace dynsel

#endif  // DYNSEL_BATCHED_H_
