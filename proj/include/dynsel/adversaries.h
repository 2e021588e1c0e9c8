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

// Non-adaptive weight streams. Stage t is a pure function of (seed, t), so
// streams replay identically and can be read in any order.

#ifndef DYNSEL_ADVERSARIES_H_
#define DYNSEL_ADVERSARIES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynsel/constraints.h"
#include "json.hpp"

namespace dynsel {

struct Stage {
  std::vector<double> weights;
  // Empty when the stage keeps the problem's own activity times.
  std::vector<Activity> activities;
  std::string tag;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual int num_elements() const = 0;
  // Stage t, 0-based.
  virtual Stage At(int t) const = 0;
  // Number of stages available, if bounded.
  virtual std::optional<int> max_stages() const { return std::nullopt; }
};

// i.i.d. U[0, 1] weights.
class UniformAdversary : public Adversary {
 public:
  UniformAdversary(int m, uint64_t seed) : m_(m), seed_(seed) {}
  int num_elements() const override { return m_; }
  Stage At(int t) const override;

 private:
  int m_;
  uint64_t seed_;
};

class ConstantAdversary : public Adversary {
 public:
  // Throws InputError for weights outside [0, 1].
  explicit ConstantAdversary(std::vector<double> weights);
  int num_elements() const override {
    return static_cast<int>(weights_.size());
  }
  Stage At(int t) const override;

 private:
  std::vector<double> weights_;
};

// Three single-choice jobs per stage at slots 1, 2, 3. A fair coin per
// stage: heads gives weights (1, 1, 1) and activities (1, 1, 1); tails
// gives weights (eps, 1, 1) and infinite activities.
class LemmaC1Adversary : public Adversary {
 public:
  // eps must lie in (0, 1).
  LemmaC1Adversary(double eps, uint64_t seed);
  int num_elements() const override { return 3; }
  Stage At(int t) const override;
  bool Heads(int t) const;
  double eps() const { return eps_; }

 private:
  double eps_;
  uint64_t seed_;
};

// delta = (alpha - 1/n) / 2. Throws InputError unless n >= 2 and
// 1/n < alpha <= 1.
double LemmaC2Delta(int n, double alpha);

// n single-choice jobs per stage with infinite activities. Each stage draws
// k uniform in [1, n] and sends weights delta^k, ..., delta, 0, ..., 0.
class LemmaC2Adversary : public Adversary {
 public:
  LemmaC2Adversary(int n, double alpha, uint64_t seed);
  int num_elements() const override { return n_; }
  Stage At(int t) const override;
  int K(int t) const;
  double delta() const { return delta_; }

 private:
  int n_;
  double alpha_;
  double delta_;
  uint64_t seed_;
};

// Stages read from {"m": k, "stages": [{"weights": [...],
// "activities": [...], "tag": "..."}]}.
class FileAdversary : public Adversary {
 public:
  explicit FileAdversary(const nlohmann::json& j);
  int num_elements() const override { return m_; }
  Stage At(int t) const override;
  std::optional<int> max_stages() const override {
    return static_cast<int>(stages_.size());
  }

 private:
  int m_ = 0;
  std::vector<Stage> stages_;
};

enum class AdversaryKind {
  kUniformRandom,
  kConstant,
  kLemmaC1,
  kLemmaC2,
  kCustomFile,
};

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kUniformRandom;
  int m = 0;
  uint64_t seed = 0;
  double eps = 0.1;
  int n = 4;
  double alpha = 0.36787944117144233;
  std::vector<double> constant_weights;
  std::string path;
};

// {"kind": "uniform-random" | "constant" | "lemma-c1" | "lemma-c2" |
//  "custom-file", "m", "weights", "eps", "n", "alpha", "path"}.
AdversarySpec AdversarySpecFromJson(const nlohmann::json& j);
std::unique_ptr<Adversary> MakeAdversary(const AdversarySpec& spec);

// Single-stage sequence: element i arrives at slot i + 1. Missing
// activities default to `fallback`.
InstanceSequence StageSequence(const Stage& stage, Activity fallback);

// Stage t as an instance file for the given family.
nlohmann::ordered_json StageToInstanceJson(const Stage& stage,
                                           const ConstraintFamily& family);

}  // namespace dynsel

#endif  // DYNSEL_ADVERSARIES_H_
