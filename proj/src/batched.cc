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

#include "dynsel/batched.h"

#include <algorithm>
#include <string>

#include "dynsel/constraints.h"
#include "dynsel/errors.h"
#include "dynsel/random.h"

namespace dynsel {
namespace {

void CheckInputs(const MatchingInstance& instance, std::span<const double> x,
                 double alpha) {
  if (static_cast<int>(x.size()) != instance.num_vars()) {
    throw InputError("LP solution has the wrong dimension");
  }
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw InputError("alpha must lie in (0, 1/2]");
  }
}

}  // namespace

double AvailabilityTable::Min() const {
  return p_.empty() ? 1.0 : *std::min_element(p_.begin(), p_.end());
}

AvailabilityTable ComputeAvailability(const MatchingInstance& instance,
                                      std::span<const double> x, double alpha) {
  CheckInputs(instance, x, alpha);
  AvailabilityTable table(instance.num_machines(), instance.num_jobs());
  for (int v = 0; v < instance.num_jobs(); ++v) {
    for (int u = 0; u < instance.num_machines(); ++u) {
      double blocked = 0.0;
      for (int earlier = 0; earlier < v; ++earlier) {
        blocked +=
            x[instance.Var(u, earlier)] * instance.BlockProbability(earlier, v);
      }
      const double p = 1.0 - alpha * blocked;
      if (p < alpha - kPolytopeTolerance) {
        throw InvariantViolation(
            "availability of machine " + std::to_string(u) + " at job " +
            std::to_string(v) + " is " + std::to_string(p) +
            ", below alpha; the LP solution violates its constraints");
      }
      table.at(u, v) = p;
    }
  }
  return table;
}

MatchingRun RunBatchedMatching(const MatchingInstance& instance,
                               std::span<const double> x,
                               const AvailabilityTable& table, double alpha,
                               uint64_t seed) {
  CheckInputs(instance, x, alpha);
  const int num_u = instance.num_machines();
  MatchingRun run;
  run.machine_of_job.assign(instance.num_jobs(), -1);
  run.activity_of_job.resize(instance.num_jobs());
  // Job currently holding each machine and the drawn activity.
  std::vector<int> holder(num_u, -1);
  std::vector<Activity> held_for(num_u);

  for (int v = 0; v < instance.num_jobs(); ++v) {
    const Job& job = instance.job(v);
    run.activity_of_job[v] =
        job.activity.Sample(KeyedUniform(seed, Stream::kMatching, v, 1));
    const double u_draw = KeyedUniform(seed, Stream::kMatching, v, 0);
    double acc = 0.0;
    int chosen = -1;
    for (int u = 0; u < num_u; ++u) {
      if (holder[u] >= 0 &&
          held_for[u].Covers(job.arrival - instance.job(holder[u]).arrival)) {
        continue;  // still busy
      }
      double q = alpha * x[instance.Var(u, v)] / table.at(u, v);
      if (q > 1.0) {
        if (q > 1.0 + kPolytopeTolerance) {
          throw InvariantViolation("machine selection probability exceeds 1");
        }
        q = 1.0;
      }
      if (chosen < 0 && u_draw >= acc && u_draw < acc + q) chosen = u;
      acc += q;
    }
    if (acc > 1.0 + kPolytopeTolerance) {
      throw InvariantViolation("job " + std::to_string(v) +
                               " selection probabilities sum to " +
                               std::to_string(acc));
    }
    if (chosen < 0) continue;
    run.machine_of_job[v] = chosen;
    holder[chosen] = v;
    held_for[chosen] = run.activity_of_job[v];
    const double mean = job.weights[chosen];
    if (job.reward == RewardModel::kBernoulli) {
      run.reward +=
          KeyedUniform(seed, Stream::kMatching, v, 2) < mean ? 1.0 : 0.0;
    } else {
      run.reward += mean;
    }
  }
  return run;
}

bool IsFeasibleMatching(const MatchingInstance& instance,
                        const MatchingRun& run) {
  const int n = instance.num_jobs();
  if (static_cast<int>(run.machine_of_job.size()) != n ||
      static_cast<int>(run.activity_of_job.size()) != n) {
    return false;
  }
  for (int v = 0; v < n; ++v) {
    const int u = run.machine_of_job[v];
    if (u < 0) continue;
    if (u >= instance.num_machines()) return false;
    for (int p = 0; p < v; ++p) {
      if (run.machine_of_job[p] != u) continue;
      const int64_t gap = instance.job(v).arrival - instance.job(p).arrival;
      if (run.activity_of_job[p].Covers(gap)) return false;
    }
  }
  return true;
}

}  // namespace dynsel
