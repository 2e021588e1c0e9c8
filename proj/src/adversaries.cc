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

#include "dynsel/adversaries.h"

#include <cmath>
#include <utility>

#include "dynsel/errors.h"
#include "dynsel/instance_io.h"
#include "dynsel/random.h"

namespace dynsel {
namespace {

void CheckWeights(const std::vector<double>& w) {
  for (double v : w) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError("adversary weights must lie in [0, 1]");
    }
  }
}

}  // namespace

Stage UniformAdversary::At(int t) const {
  Stage stage;
  stage.weights.resize(m_);
  for (int e = 0; e < m_; ++e) {
    stage.weights[e] = KeyedUniform(seed_, Stream::kAdversary, t, e);
  }
  return stage;
}

ConstantAdversary::ConstantAdversary(std::vector<double> weights)
    : weights_(std::move(weights)) {
  CheckWeights(weights_);
}

Stage ConstantAdversary::At(int /*t*/) const {
  Stage stage;
  stage.weights = weights_;
  return stage;
}

LemmaC1Adversary::LemmaC1Adversary(double eps, uint64_t seed)
    : eps_(eps), seed_(seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
}

bool LemmaC1Adversary::Heads(int t) const {
  return KeyedUniform(seed_, Stream::kAdversary, t) < 0.5;
}

Stage LemmaC1Adversary::At(int t) const {
  Stage stage;
  if (Heads(t)) {
    stage.weights = {1.0, 1.0, 1.0};
    stage.activities.assign(3, Activity::Finite(1));
    stage.tag = "heads";
  } else {
    stage.weights = {eps_, 1.0, 1.0};
    stage.activities.assign(3, Activity::Infinite());
    stage.tag = "tails";
  }
  return stage;
}

double LemmaC2Delta(int n, double alpha) {
  if (n < 2) throw InputError("lemma-c2 needs n >= 2");
  if (!(alpha <= 1.0) || !(alpha > 1.0 / n)) {
    throw InputError("lemma-c2 needs 1/n < alpha <= 1");
  }
  return (alpha - 1.0 / n) / 2.0;
}

LemmaC2Adversary::LemmaC2Adversary(int n, double alpha, uint64_t seed)
    : n_(n), alpha_(alpha), delta_(LemmaC2Delta(n, alpha)), seed_(seed) {}

int LemmaC2Adversary::K(int t) const {
  Rng rng(DeriveSeed(seed_, Stream::kAdversary, t));
  return 1 + rng.UniformInt(n_);
}

Stage LemmaC2Adversary::At(int t) const {
  const int k = K(t);
  Stage stage;
  stage.weights.assign(n_, 0.0);
  for (int i = 0; i < k; ++i) stage.weights[i] = std::pow(delta_, k - i);
  stage.activities.assign(n_, Activity::Infinite());
  stage.tag = "k=" + std::to_string(k);
  return stage;
}

FileAdversary::FileAdversary(const nlohmann::json& j) {
  try {
    m_ = j.at("m").get<int>();
    for (const auto& js : j.at("stages")) {
      Stage stage;
      stage.weights = js.at("weights").get<std::vector<double>>();
      if (static_cast<int>(stage.weights.size()) != m_) {
        throw ConfigError("stage weight vector has the wrong length");
      }
      CheckWeights(stage.weights);
      if (js.contains("activities")) {
        for (const auto& ja : js.at("activities")) {
          stage.activities.push_back(Activity::FromEncoded(ja.get<int64_t>()));
        }
        if (static_cast<int>(stage.activities.size()) != m_) {
          throw ConfigError("stage activity vector has the wrong length");
        }
      }
      stage.tag = js.value("tag", "");
      stages_.push_back(std::move(stage));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed adversary file: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("invalid adversary file: ") + e.what());
  }
  if (stages_.empty()) throw ConfigError("adversary file has no stages");
}

Stage FileAdversary::At(int t) const {
  if (t < 0 || t >= static_cast<int>(stages_.size())) {
    throw ConfigError("adversary file has only " +
                      std::to_string(stages_.size()) + " stages");
  }
  return stages_[t];
}

AdversarySpec AdversarySpecFromJson(const nlohmann::json& j) {
  AdversarySpec spec;
  try {
    const std::string kind = j.value("kind", "uniform-random");
    if (kind == "uniform-random") {
      spec.kind = AdversaryKind::kUniformRandom;
    } else if (kind == "constant") {
      spec.kind = AdversaryKind::kConstant;
      spec.constant_weights = j.at("weights").get<std::vector<double>>();
    } else if (kind == "lemma-c1") {
      spec.kind = AdversaryKind::kLemmaC1;
    } else if (kind == "lemma-c2") {
      spec.kind = AdversaryKind::kLemmaC2;
    } else if (kind == "custom-file") {
      spec.kind = AdversaryKind::kCustomFile;
      spec.path = j.at("path").get<std::string>();
    } else {
      throw ConfigError("unknown adversary kind '" + kind + "'");
    }
    spec.m = j.value("m", 0);
    spec.eps = j.value("eps", spec.eps);
    spec.n = j.value("n", spec.n);
    spec.alpha = j.value("alpha", spec.alpha);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed adversary spec: ") + e.what());
  }
  return spec;
}

std::unique_ptr<Adversary> MakeAdversary(const AdversarySpec& spec) {
  try {
    switch (spec.kind) {
      case AdversaryKind::kUniformRandom:
        if (spec.m <= 0) throw ConfigError("uniform-random needs m > 0");
        return std::make_unique<UniformAdversary>(spec.m, spec.seed);
      case AdversaryKind::kConstant:
        return std::make_unique<ConstantAdversary>(spec.constant_weights);
      case AdversaryKind::kLemmaC1:
        return std::make_unique<LemmaC1Adversary>(spec.eps, spec.seed);
      case AdversaryKind::kLemmaC2:
        return std::make_unique<LemmaC2Adversary>(spec.n, spec.alpha,
                                                  spec.seed);
      case AdversaryKind::kCustomFile:
        return std::make_unique<FileAdversary>(ReadJsonFile(spec.path));
    }
  } catch (const InputError& e) {
    throw ConfigError(std::string("invalid adversary: ") + e.what());
  }
  throw ConfigError("unknown adversary kind");
}

InstanceSequence StageSequence(const Stage& stage, Activity fallback) {
  std::vector<Element> elements(stage.weights.size());
  for (size_t i = 0; i < elements.size(); ++i) {
    elements[i].id = static_cast<int>(i);
    elements[i].weight = stage.weights[i];
    elements[i].activity =
        stage.activities.empty() ? fallback : stage.activities[i];
    elements[i].arrival = static_cast<int64_t>(i) + 1;
  }
  return InstanceSequence(std::move(elements));
}

nlohmann::ordered_json StageToInstanceJson(const Stage& stage,
                                           const ConstraintFamily& family) {
  return InstanceToJson(family, StageSequence(stage, Activity::Infinite()));
}

}  // namespace dynsel
