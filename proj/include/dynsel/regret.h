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

// Repeated selection against an adversary: each stage sends the whole
// sequence with fresh weights w_t in [0,1]^m, the learner commits to a
// fractional point x_t in the temporal polytope, and a temporal OCRS rounds
// it to a feasible set a_t worth <a_t, w_t>.
//
// Three feedback models:
//  - full feedback: w_t is revealed after the stage;
//  - semi-bandit with a white-box scheme: only the weights of selected
//    elements are revealed, and importance weighting by the scheme's
//    selection probabilities feeds a mirror-descent learner;
//  - semi-bandit with an opaque scheme: the horizon is cut into blocks,
//    a few random stages per block explore single elements, and the
//    full-feedback learner is updated once per block.

#ifndef DYNSEL_REGRET_H_
#define DYNSEL_REGRET_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dynsel/adversaries.h"
#include "dynsel/constraints.h"
#include "dynsel/ocrs.h"

namespace dynsel {

class RegretMinimizer {
 public:
  virtual ~RegretMinimizer() = default;
  virtual std::string_view name() const = 0;
  // A point of the decision set.
  virtual std::vector<double> Recommend() const = 0;
  // Linear reward vector of the last round.
  virtual void Update(std::span<const double> reward) = 0;
};

// Projected online gradient ascent. x_1 = 0 and
//   x_{t+1} = Proj(x_t + eta_t r_t),  eta_t = step_scale * D / (G sqrt(t)),
// with diameter bound D = sqrt(m) and gradient bound G = sqrt(m).
class OgdMinimizer : public RegretMinimizer {
 public:
  explicit OgdMinimizer(LinearConstraints decision_set,
                        double step_scale = 1.0);
  std::string_view name() const override { return "ogd"; }
  std::vector<double> Recommend() const override { return x_; }
  void Update(std::span<const double> reward) override;

 private:
  LinearConstraints set_;
  double step_scale_;
  std::vector<double> x_;
  int rounds_ = 0;
};

// Entropic online mirror descent with a KL projection, mixed with a fixed
// interior point so every coordinate keeps positive mass:
//   rec = (1 - gamma) x_t + gamma c,
//   x_{t+1} = Proj_KL(x_t * exp(eta r_t)).
class OsmdMinimizer : public RegretMinimizer {
 public:
  // eta = sqrt(log(m + 1) / (m T)), gamma = min(1/2, m eta).
  OsmdMinimizer(LinearConstraints decision_set, int horizon);
  std::string_view name() const override { return "osmd"; }
  std::vector<double> Recommend() const override;
  void Update(std::span<const double> reward) override;

  double eta() const { return eta_; }
  double gamma() const { return gamma_; }
  const std::vector<double>& center() const { return center_; }

 private:
  LinearConstraints set_;
  double eta_;
  double gamma_;
  std::vector<double> center_;
  std::vector<double> x_;
};

// The fixed part of a repeated instance. Weights in `seq` are ignored.
struct RegretProblem {
  ConstraintFamily family = ConstraintFamily::Rank1(0);
  InstanceSequence seq;
};

enum class PlayMode {
  kOcrs,        // a_t from the temporal OCRS
  kFractional,  // perfect selector: reward <x_t, w_t>
};

enum class ExplorationMode {
  kThroughOcrs,  // exploration vertices are rounded by the OCRS too
  kDirect,       // exploration plays the feasible set itself
};

struct RegretTrace {
  int num_elements = 0;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> plays;
  std::vector<ElementSet> selected;
  std::vector<double> reward;
  std::vector<double> fractional_reward;
  // Blocked runs only.
  std::vector<bool> exploration;
  int unobserved_explorations = 0;

  int size() const { return static_cast<int>(reward.size()); }
  double TotalReward() const;
  double TotalFractionalReward() const;
};

// Seed of the scheme's coins at stage t.
uint64_t StageSeed(uint64_t seed, int t);

RegretTrace RunFullFeedback(const RegretProblem& problem, GreedyOcrs& ocrs,
                            RegretMinimizer& rm, const Adversary& adversary,
                            int horizon, uint64_t seed,
                            PlayMode mode = PlayMode::kOcrs);

// w_e / q(e) on accepted elements, 0 elsewhere.
std::vector<double> ImportanceWeightedEstimate(
    const SelectionTranscript& transcript, std::span<const double> weights);

// `estimates`, when non-null, receives the per-stage estimator.
RegretTrace RunOsmdSemiBandit(
    const RegretProblem& problem, GreedyOcrs& ocrs, const Adversary& adversary,
    int horizon, uint64_t seed,
    std::vector<std::vector<double>>* estimates = nullptr);

// Z = ceil(T^{2/3}) blocks of length L = ceil(T / Z); the last block is
// truncated. Throws ConfigError if m > L.
struct BlockSchedule {
  int horizon = 0;
  int num_blocks = 0;
  int block_length = 0;

  int Start(int block) const { return block * block_length; }
  int Size(int block) const;
};
BlockSchedule MakeBlockSchedule(int horizon, int m);

// permutation[j] is explored at stage offset offsets[j] of the block;
// offsets are distinct. Explores min(m, block_size) elements.
struct BlockExploration {
  std::vector<int> permutation;
  std::vector<int> offsets;
};
BlockExploration DrawBlockExploration(int block_size, int m, uint64_t seed,
                                      int block);

// f~(e) = w_{t_e}(e) if the exploration stage t_e of e observed e, else 0.
// block_weights[o] holds the weights at block offset o; observed[j] refers
// to draw.permutation[j].
std::vector<double> BlockEstimate(
    const BlockExploration& draw,
    std::span<const std::vector<double>> block_weights,
    const std::vector<bool>& observed);

// The feasible set played to explore e: {e}. Throws InputError if {e} is
// not temporally feasible (then no feasible set contains e).
ElementSet ExplorationSet(const ConstraintFamily& family,
                          const InstanceSequence& seq, int e);

RegretTrace RunBlockedSemiBandit(
    const RegretProblem& problem, GreedyOcrs& ocrs, RegretMinimizer& rm,
    const Adversary& adversary, int horizon, uint64_t seed,
    ExplorationMode exploration = ExplorationMode::kThroughOcrs);

// All temporally feasible sets, by exhaustive enumeration (m <= 20).
std::vector<ElementSet> TemporallyFeasibleSets(const ConstraintFamily& family,
                                               const InstanceSequence& seq);

// max over S temporally feasible of sum_{e in S} w_e, by enumeration.
double MaxFeasibleWeight(const ConstraintFamily& family,
                         const InstanceSequence& seq,
                         std::span<const double> w);

struct Benchmarks {
  // Best fixed temporally feasible set in hindsight, by enumeration
  // (m <= 12); beyond that the LP value stands in as an upper bound.
  double best_fixed = 0.0;
  // max over x in P^d of <x, sum_t w_t>. Never below best_fixed.
  double best_fixed_lp = 0.0;
  // Checkpoints every `stride` stages and at the end (1-based stage).
  std::vector<int> alpha_regret_stage;
  std::vector<double> best_fixed_prefix;
  std::vector<double> cumulative_reward;
  // alpha * best_fixed_prefix - cumulative_reward.
  std::vector<double> alpha_regret;
  // max over x in b P^d of the prefix reward minus sum_s <x_s, w_s>.
  std::vector<double> fractional_regret;
  // Sum over stages of the stage optimum under the stage's own activity
  // times (requires m <= 20).
  double dynamic_opt = 0.0;
};

// Throws InvariantViolation if the LP value falls below the best feasible
// set.
Benchmarks ComputeBenchmarks(const RegretTrace& trace,
                             const RegretProblem& problem,
                             const Adversary& adversary, double alpha,
                             int stride, double b = 1.0);

}  // namespace dynsel

#endif  // DYNSEL_REGRET_H_
