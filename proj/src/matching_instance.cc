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

#include "dynsel/matching_instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>

#include "dynsel/errors.h"

namespace dynsel {
namespace {

bool ActivityLess(Activity a, Activity b) { return a <= b && !(a == b); }

}  // namespace

ActivityPmf::ActivityPmf(std::vector<Atom> atoms) {
  double total = 0.0;
  for (const Atom& atom : atoms) {
    if (!(atom.prob >= 0.0) || !std::isfinite(atom.prob)) {
      throw InputError("activity probabilities must be non-negative");
    }
    total += atom.prob;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw InputError("activity probabilities must sum to 1");
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return ActivityLess(a.value, b.value);
  });
  for (const Atom& atom : atoms) {
    if (!atoms_.empty() && atoms_.back().value == atom.value) {
      atoms_.back().prob += atom.prob;
    } else {
      atoms_.push_back(atom);
    }
  }
}

ActivityPmf ActivityPmf::Deterministic(Activity value) {
  return ActivityPmf({{value, 1.0}});
}

double ActivityPmf::TailAtLeast(int64_t k) const {
  double tail = 0.0;
  for (const Atom& atom : atoms_) {
    if (atom.value.Covers(k)) tail += atom.prob;
  }
  return std::min(1.0, tail);
}

Activity ActivityPmf::Sample(double u) const {
  double acc = 0.0;
  for (const Atom& atom : atoms_) {
    acc += atom.prob;
    if (u < acc) return atom.value;
  }
  return atoms_.back().value;
}

MatchingInstance::MatchingInstance(int num_machines, std::vector<Job> jobs)
    : num_machines_(num_machines), jobs_(std::move(jobs)) {
  if (num_machines_ <= 0) throw InputError("need at least one machine");
  std::sort(jobs_.begin(), jobs_.end(),
            [](const Job& a, const Job& b) { return a.arrival < b.arrival; });
  for (size_t v = 0; v < jobs_.size(); ++v) {
    const Job& job = jobs_[v];
    if (job.arrival < 1) throw InputError("job arrivals must be positive");
    if (v > 0 && jobs_[v - 1].arrival == job.arrival) {
      throw InputError("job arrivals must be distinct");
    }
    if (static_cast<int>(job.weights.size()) != num_machines_) {
      throw InputError("each job needs one weight per machine");
    }
    for (double w : job.weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw InputError("job weights must be finite and non-negative");
      }
      if (job.reward == RewardModel::kBernoulli && w > 1.0) {
        throw InputError("Bernoulli rewards need mean weights in [0, 1]");
      }
    }
    if (job.activity.atoms().empty()) {
      throw InputError("each job needs an activity distribution");
    }
  }
}

double MatchingInstance::BlockProbability(int earlier, int later) const {
  return jobs_[earlier].activity.TailAtLeast(jobs_[later].arrival -
                                             jobs_[earlier].arrival);
}

MatchingInstance MatchingInstanceFromJson(const nlohmann::json& j) {
  try {
    const int num_machines = j.at("U").get<int>();
    std::vector<Job> jobs;
    for (const auto& jv : j.at("V")) {
      Job job;
      job.arrival = jv.at("arrival").get<int64_t>();
      job.weights = jv.at("weights").get<std::vector<double>>();
      std::vector<ActivityPmf::Atom> atoms;
      for (const auto& ja : jv.at("activity_pmf")) {
        atoms.push_back({Activity::FromEncoded(ja.at("value").get<int64_t>()),
                         ja.at("prob").get<double>()});
      }
      job.activity = ActivityPmf(std::move(atoms));
      if (jv.contains("reward")) {
        const std::string model = jv.at("reward").get<std::string>();
        if (model == "bernoulli") {
          job.reward = RewardModel::kBernoulli;
        } else if (model != "deterministic") {
          throw ConfigError("unknown reward model '" + model + "'");
        }
      }
      jobs.push_back(std::move(job));
    }
    return MatchingInstance(num_machines, std::move(jobs));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed matching instance: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("invalid matching instance: ") + e.what());
  }
}

MatchingInstance LoadMatchingInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matching instance '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return MatchingInstanceFromJson(j);
}

nlohmann::ordered_json MatchingInstanceToJson(
    const MatchingInstance& instance) {
  nlohmann::ordered_json out;
  out["U"] = instance.num_machines();
  nlohmann::ordered_json jobs = nlohmann::ordered_json::array();
  for (const Job& job : instance.jobs()) {
    nlohmann::ordered_json jv;
    jv["arrival"] = job.arrival;
    jv["weights"] = job.weights;
    nlohmann::ordered_json pmf = nlohmann::ordered_json::array();
    for (const auto& atom : job.activity.atoms()) {
      pmf.push_back({{"value", atom.value.Encoded()}, {"prob", atom.prob}});
    }
    jv["activity_pmf"] = pmf;
    jv["reward"] =
        job.reward == RewardModel::kBernoulli ? "bernoulli" : "deterministic";
    jobs.push_back(jv);
  }
  out["V"] = jobs;
  return out;
}

}  // namespace dynsel
