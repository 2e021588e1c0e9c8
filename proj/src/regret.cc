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

#include "dynsel/regret.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "dynsel/errors.h"
#include "dynsel/lp.h"
#include "dynsel/projection.h"
#include "dynsel/random.h"
#include "dynsel/temporal.h"

namespace dynsel {
namespace {

constexpr int kMaxEnumeration = 20;
constexpr int kMaxPrefixEnumeration = 12;

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double SetWeight(std::span<const int> set, std::span<const double> w) {
  double s = 0.0;
  for (int e : set) s += w[e];
  return s;
}

std::vector<double> StageWeights(const Adversary& adversary, int t, int m) {
  Stage stage = adversary.At(t);
  if (static_cast<int>(stage.weights.size()) != m) {
    throw InputError("adversary emits " + std::to_string(stage.weights.size()) +
                     " weights for " + std::to_string(m) + " elements");
  }
  for (double w : stage.weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw InputError("adversary weight outside [0, 1] at stage " +
                       std::to_string(t));
    }
  }
  return std::move(stage.weights);
}

void CheckRun(const RegretProblem& problem, const GreedyOcrs& ocrs,
              const Adversary& adversary, int horizon) {
  const int m = problem.seq.size();
  if (problem.family.size() != m || ocrs.family().size() != m) {
    throw InputError("problem, scheme and sequence sizes differ");
  }
  if (adversary.num_elements() != m) {
    throw InputError("adversary and problem sizes differ");
  }
  if (horizon <= 0) throw ConfigError("horizon must be positive");
  if (adversary.max_stages() && *adversary.max_stages() < horizon) {
    throw ConfigError("adversary provides only " +
                      std::to_string(*adversary.max_stages()) + " stages");
  }
}

void RecordStage(RegretTrace& trace, std::vector<double> w,
                 std::vector<double> x, ElementSet selected) {
  trace.reward.push_back(SetWeight(selected, w));
  trace.fractional_reward.push_back(Dot(x, w));
  trace.weights.push_back(std::move(w));
  trace.plays.push_back(std::move(x));
  trace.selected.push_back(std::move(selected));
}

}  // namespace

OgdMinimizer::OgdMinimizer(LinearConstraints decision_set, double step_scale)
    : set_(std::move(decision_set)),
      step_scale_(step_scale),
      x_(set_.dim(), 0.0) {}

void OgdMinimizer::Update(std::span<const double> reward) {
  if (static_cast<int>(reward.size()) != set_.dim()) {
    throw InputError("reward vector has the wrong dimension");
  }
  ++rounds_;
  const double eta = step_scale_ / std::sqrt(static_cast<double>(rounds_));
  std::vector<double> y(x_.size());
  for (size_t e = 0; e < y.size(); ++e) y[e] = x_[e] + eta * reward[e];
  x_ = ProjectEuclidean(set_, y);
}

OsmdMinimizer::OsmdMinimizer(LinearConstraints decision_set, int horizon)
    : set_(std::move(decision_set)) {
  const double m = std::max(1, set_.dim());
  if (horizon <= 0) throw ConfigError("horizon must be positive");
  eta_ = std::sqrt(std::log(m + 1.0) / (m * horizon));
  gamma_ = std::min(0.5, m * eta_);
  center_.assign(set_.dim(), 1.0);
  ShrinkIntoPolytope(set_, center_);
  for (double& c : center_) c *= 0.5;
  x_ = center_;
}

std::vector<double> OsmdMinimizer::Recommend() const {
  std::vector<double> out(x_.size());
  for (size_t e = 0; e < x_.size(); ++e) {
    out[e] = (1.0 - gamma_) * x_[e] + gamma_ * center_[e];
  }
  return out;
}

void OsmdMinimizer::Update(std::span<const double> reward) {
  if (static_cast<int>(reward.size()) != set_.dim()) {
    throw InputError("reward vector has the wrong dimension");
  }
  std::vector<double> y(x_.size());
  for (size_t e = 0; e < y.size(); ++e) {
    y[e] = x_[e] * std::exp(eta_ * reward[e]);
  }
  x_ = ProjectEntropic(set_, y);
}

double RegretTrace::TotalReward() const {
  return std::accumulate(reward.begin(), reward.end(), 0.0);
}

double RegretTrace::TotalFractionalReward() const {
  return std::accumulate(fractional_reward.begin(), fractional_reward.end(),
                         0.0);
}

uint64_t StageSeed(uint64_t seed, int t) {
  return DeriveSeed(seed, Stream::kPolicy, static_cast<uint64_t>(t));
}

RegretTrace RunFullFeedback(const RegretProblem& problem, GreedyOcrs& ocrs,
                            RegretMinimizer& rm, const Adversary& adversary,
                            int horizon, uint64_t seed, PlayMode mode) {
  CheckRun(problem, ocrs, adversary, horizon);
  const int m = problem.seq.size();
  RegretTrace trace;
  trace.num_elements = m;
  for (int t = 0; t < horizon; ++t) {
    std::vector<double> x = rm.Recommend();
    std::vector<double> w = StageWeights(adversary, t, m);
    ElementSet selected;
    if (mode == PlayMode::kOcrs) {
      RunResult run = RunTemporal(ocrs, FractionalPoint(x), problem.seq,
                                  StageSeed(seed, t));
      selected = std::move(run.selected);
    }
    rm.Update(w);
    RecordStage(trace, std::move(w), std::move(x), std::move(selected));
    if (mode == PlayMode::kFractional) {
      trace.reward.back() = trace.fractional_reward.back();
    }
  }
  return trace;
}

std::vector<double> ImportanceWeightedEstimate(
    const SelectionTranscript& transcript, std::span<const double> weights) {
  std::vector<double> estimate(weights.size(), 0.0);
  for (const TranscriptEntry& entry : transcript.entries) {
    if (!entry.accepted) continue;
    const double q = SelectionProbability(transcript, entry.id);
    if (!(q > 0.0)) {
      throw InvariantViolation("selected element " + std::to_string(entry.id) +
                               " has zero selection probability");
    }
    estimate[entry.id] = weights[entry.id] / q;
  }
  return estimate;
}

RegretTrace RunOsmdSemiBandit(const RegretProblem& problem, GreedyOcrs& ocrs,
                              const Adversary& adversary, int horizon,
                              uint64_t seed,
                              std::vector<std::vector<double>>* estimates) {
  CheckRun(problem, ocrs, adversary, horizon);
  const int m = problem.seq.size();
  OsmdMinimizer rm(TemporalPolytopeConstraints(problem.family, problem.seq,
                                               ocrs.constants().b),
                   horizon);
  RegretTrace trace;
  trace.num_elements = m;
  for (int t = 0; t < horizon; ++t) {
    std::vector<double> x = rm.Recommend();
    std::vector<double> w = StageWeights(adversary, t, m);
    RunResult run =
        RunTemporal(ocrs, FractionalPoint(x), problem.seq, StageSeed(seed, t));
    // Only the weights of selected elements enter the estimator.
    std::vector<double> estimate =
        ImportanceWeightedEstimate(run.transcript, w);
    rm.Update(estimate);
    if (estimates != nullptr) estimates->push_back(estimate);
    RecordStage(trace, std::move(w), std::move(x), std::move(run.selected));
  }
  return trace;
}

int BlockSchedule::Size(int block) const {
  return std::min(block_length, horizon - Start(block));
}

BlockSchedule MakeBlockSchedule(int horizon, int m) {
  if (horizon <= 0) throw ConfigError("horizon must be positive");
  BlockSchedule s;
  s.horizon = horizon;
  const int z = static_cast<int>(
      std::ceil(std::pow(static_cast<double>(horizon), 2.0 / 3.0) - 1e-9));
  s.block_length = (horizon + z - 1) / z;
  s.num_blocks = (horizon + s.block_length - 1) / s.block_length;
  if (m > s.block_length) {
    throw ConfigError("blocks of length " + std::to_string(s.block_length) +
                      " cannot fit " + std::to_string(m) +
                      " exploration stages; increase the horizon");
  }
  return s;
}

BlockExploration DrawBlockExploration(int block_size, int m, uint64_t seed,
                                      int block) {
  Rng rng(DeriveSeed(seed, Stream::kExploration, static_cast<uint64_t>(block)));
  BlockExploration out;
  out.permutation.resize(m);
  std::iota(out.permutation.begin(), out.permutation.end(), 0);
  rng.Shuffle(out.permutation);
  const int explored = std::min(m, block_size);
  out.permutation.resize(explored);
  out.offsets = rng.SampleWithoutReplacement(block_size, explored);
  return out;
}

ElementSet ExplorationSet(const ConstraintFamily& family,
                          const InstanceSequence& seq, int e) {
  const ElementSet single = {e};
  if (!IsTemporallyFeasible(single, seq, family)) {
    throw InputError("element " + std::to_string(e) +
                     " is not feasible on its own and cannot be explored");
  }
  return single;
}

std::vector<double> BlockEstimate(
    const BlockExploration& draw,
    std::span<const std::vector<double>> block_weights,
    const std::vector<bool>& observed) {
  if (draw.permutation.size() != draw.offsets.size() ||
      observed.size() != draw.permutation.size()) {
    throw InputError("exploration draw and observations disagree in size");
  }
  size_t m = 0;
  for (int e : draw.permutation) m = std::max(m, static_cast<size_t>(e) + 1);
  if (!block_weights.empty()) m = std::max(m, block_weights[0].size());
  std::vector<double> estimate(m, 0.0);
  for (size_t j = 0; j < draw.permutation.size(); ++j) {
    const int e = draw.permutation[j];
    if (observed[j]) estimate[e] = block_weights[draw.offsets[j]][e];
  }
  return estimate;
}

RegretTrace RunBlockedSemiBandit(const RegretProblem& problem, GreedyOcrs& ocrs,
                                 RegretMinimizer& rm,
                                 const Adversary& adversary, int horizon,
                                 uint64_t seed, ExplorationMode exploration) {
  CheckRun(problem, ocrs, adversary, horizon);
  const int m = problem.seq.size();
  const BlockSchedule schedule = MakeBlockSchedule(horizon, m);
  std::vector<ElementSet> explore_sets(m);
  for (int e = 0; e < m; ++e) {
    explore_sets[e] = ExplorationSet(problem.family, problem.seq, e);
  }

  RegretTrace trace;
  trace.num_elements = m;
  RunOptions exploit_options;
  RunOptions explore_options;
  // A vertex need not lie in the scaled polytope when b < 1.
  explore_options.check_precondition = false;

  for (int block = 0; block < schedule.num_blocks; ++block) {
    const int start = schedule.Start(block);
    const int size = schedule.Size(block);
    const BlockExploration draw = DrawBlockExploration(size, m, seed, block);
    std::vector<int> explore_at(size, -1);
    for (size_t j = 0; j < draw.offsets.size(); ++j) {
      explore_at[draw.offsets[j]] = draw.permutation[j];
    }
    const std::vector<double> x_block = rm.Recommend();
    const FractionalPoint x_point(x_block);
    std::vector<std::vector<double>> block_weights(size);
    std::vector<bool> observed(draw.permutation.size(), false);
    exploit_options.check_precondition = true;

    for (int offset = 0; offset < size; ++offset) {
      const int t = start + offset;
      std::vector<double> w = StageWeights(adversary, t, m);
      const int target = explore_at[offset];
      std::vector<double> x;
      ElementSet selected;
      if (target >= 0) {
        x.assign(m, 0.0);
        for (int e : explore_sets[target]) x[e] = 1.0;
        if (exploration == ExplorationMode::kDirect) {
          selected = explore_sets[target];
        } else {
          selected = RunTemporal(ocrs, FractionalPoint(x), problem.seq,
                                 StageSeed(seed, t), explore_options)
                         .selected;
        }
        const bool seen =
            std::binary_search(selected.begin(), selected.end(), target);
        for (size_t j = 0; j < draw.permutation.size(); ++j) {
          if (draw.permutation[j] == target) observed[j] = seen;
        }
        if (!seen) ++trace.unobserved_explorations;
      } else {
        x = x_block;
        selected = RunTemporal(ocrs, x_point, problem.seq, StageSeed(seed, t),
                               exploit_options)
                       .selected;
        exploit_options.check_precondition = false;  // same x all block
      }
      trace.exploration.push_back(target >= 0);
      block_weights[offset] = w;
      RecordStage(trace, std::move(w), std::move(x), std::move(selected));
    }
    if (static_cast<int>(draw.permutation.size()) == m) {
      rm.Update(BlockEstimate(draw, block_weights, observed));
    }
  }
  return trace;
}

std::vector<ElementSet> TemporallyFeasibleSets(const ConstraintFamily& family,
                                               const InstanceSequence& seq) {
  const int m = seq.size();
  if (m > kMaxEnumeration) {
    throw InputError("exhaustive enumeration is limited to m <= " +
                     std::to_string(kMaxEnumeration));
  }
  std::vector<ElementSet> out;
  ElementSet set;
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    set.clear();
    for (int e = 0; e < m; ++e) {
      if (mask & (1u << e)) set.push_back(e);
    }
    if (IsTemporallyFeasible(set, seq, family)) out.push_back(set);
  }
  return out;
}

double MaxFeasibleWeight(const ConstraintFamily& family,
                         const InstanceSequence& seq,
                         std::span<const double> w) {
  double best = 0.0;
  for (const ElementSet& set : TemporallyFeasibleSets(family, seq)) {
    best = std::max(best, SetWeight(set, w));
  }
  return best;
}

Benchmarks ComputeBenchmarks(const RegretTrace& trace,
                             const RegretProblem& problem,
                             const Adversary& adversary, double alpha,
                             int stride, double b) {
  const int m = trace.num_elements;
  const int horizon = trace.size();
  if (stride <= 0) stride = 1;
  Benchmarks out;
  const bool enumerate = m <= kMaxPrefixEnumeration;
  std::vector<ElementSet> sets;
  if (enumerate) sets = TemporallyFeasibleSets(problem.family, problem.seq);

  std::vector<double> set_sums(sets.size(), 0.0);
  std::vector<double> prefix(m, 0.0);
  double reward = 0.0;
  double fractional = 0.0;
  for (int t = 0; t < horizon; ++t) {
    const auto& w = trace.weights[t];
    for (int e = 0; e < m; ++e) prefix[e] += w[e];
    for (size_t i = 0; i < sets.size(); ++i) {
      set_sums[i] += SetWeight(sets[i], w);
    }
    reward += trace.reward[t];
    fractional += trace.fractional_reward[t];
    if ((t + 1) % stride != 0 && t + 1 != horizon) continue;
    const double lp =
        SolveFractional(problem.family, problem.seq, prefix, 1.0).objective;
    const double best =
        enumerate ? *std::max_element(set_sums.begin(), set_sums.end()) : lp;
    if (best > lp + kLpTolerance * std::max(1.0, lp)) {
      throw InvariantViolation("LP best fixed value " + std::to_string(lp) +
                               " is below the best feasible set " +
                               std::to_string(best));
    }
    out.alpha_regret_stage.push_back(t + 1);
    out.best_fixed_prefix.push_back(best);
    out.cumulative_reward.push_back(reward);
    out.alpha_regret.push_back(alpha * best - reward);
    out.fractional_regret.push_back(b * lp - fractional);
    out.best_fixed = best;
    out.best_fixed_lp = lp;
  }

  if (m <= kMaxEnumeration) {
    const std::vector<ElementSet> fixed_sets =
        enumerate ? sets : TemporallyFeasibleSets(problem.family, problem.seq);
    for (int t = 0; t < horizon; ++t) {
      const Stage stage = adversary.At(t);
      const auto& w = trace.weights[t];
      if (stage.activities.empty()) {
        double best = 0.0;
        for (const ElementSet& s : fixed_sets) {
          best = std::max(best, SetWeight(s, w));
        }
        out.dynamic_opt += best;
      } else {
        out.dynamic_opt += MaxFeasibleWeight(
            problem.family, problem.seq.WithActivities(stage.activities), w);
      }
    }
  } else {
    out.dynamic_opt = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace dynsel
