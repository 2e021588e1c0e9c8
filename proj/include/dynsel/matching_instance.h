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

// Bipartite matching with reusable machines: machines U are fixed, jobs V
// arrive one at a time. Matching job v to machine u blocks u for a random
// number of slots d_uv drawn from the job's activity distribution; u is busy
// for job v' iff d_uv >= s_v' - s_v.

#ifndef DYNSEL_MATCHING_INSTANCE_H_
#define DYNSEL_MATCHING_INSTANCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dynsel/constraints.h"
#include "json.hpp"

namespace dynsel {

// Finite-support distribution over {0, 1, ..., inf}.
class ActivityPmf {
 public:
  struct Atom {
    Activity value;
    double prob = 0.0;
  };

  ActivityPmf() = default;
  // Probabilities must be non-negative and sum to 1 within 1e-9. Atoms with
  // equal values are merged.
  explicit ActivityPmf(std::vector<Atom> atoms);
  static ActivityPmf Deterministic(Activity value);

  const std::vector<Atom>& atoms() const { return atoms_; }
  // Pr[d >= k] for k >= 0.
  double TailAtLeast(int64_t k) const;
  // Inverse-CDF draw from u in [0, 1).
  Activity Sample(double u) const;

 private:
  std::vector<Atom> atoms_;
};

enum class RewardModel { kDeterministic, kBernoulli };

struct Job {
  int64_t arrival = 1;
  // Mean weight per machine.
  std::vector<double> weights;
  ActivityPmf activity;
  RewardModel reward = RewardModel::kDeterministic;
};

class MatchingInstance {
 public:
  MatchingInstance() = default;
  // Sorts jobs by arrival. Arrivals must be distinct and positive.
  MatchingInstance(int num_machines, std::vector<Job> jobs);

  int num_machines() const { return num_machines_; }
  int num_jobs() const { return static_cast<int>(jobs_.size()); }
  const Job& job(int v) const { return jobs_[v]; }
  const std::vector<Job>& jobs() const { return jobs_; }

  // Column index of x_{uv} in LP vectors.
  int Var(int u, int v) const { return v * num_machines_ + u; }
  int num_vars() const { return num_machines_ * num_jobs(); }

  // Pr[d_{u,earlier} >= s_later - s_earlier].
  double BlockProbability(int earlier, int later) const;

 private:
  int num_machines_ = 0;
  std::vector<Job> jobs_;
};

// {U, V: [{arrival, weights, activity_pmf: [{value, prob}], reward?}]}.
// Activity value -1 encodes infinity. Throws ConfigError on bad input.
MatchingInstance MatchingInstanceFromJson(const nlohmann::json& j);
MatchingInstance LoadMatchingInstance(const std::string& path);
nlohmann::ordered_json MatchingInstanceToJson(const MatchingInstance& instance);

}  // namespace dynsel

#endif  // DYNSEL_MATCHING_INSTANCE_H_
