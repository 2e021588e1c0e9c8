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
#include <vector>

#include "doctest.h"
#include "dynsel/errors.h"
#include "dynsel/regret.h"
#include "dynsel/stats.h"
#include "oracles.h"

namespace dynsel {
namespace {

TEST_CASE("uniform adversary is seeded and bounded") {
  const UniformAdversary a(4, 10), b(4, 10), c(4, 11);
  for (int t = 0; t < 50; ++t) {
    CHECK(a.At(t).weights == b.At(t).weights);
    CHECK(a.At(t).weights != c.At(t).weights);
    for (double w : a.At(t).weights) CHECK((w >= 0.0 && w <= 1.0));
  }
}

TEST_CASE("two-stage coin adversary") {
  const double eps = 0.1;
  const LemmaC1Adversary adversary(eps, 3);
  const auto family = ConstraintFamily::Rank1(3);
  RunningStat opt;
  RunningStat policy_half;
  int heads = 0;
  const int n = 40000;
  for (int t = 0; t < n; ++t) {
    const Stage stage = adversary.At(t);
    heads += adversary.Heads(t);
    const InstanceSequence seq = StageSequence(stage, Activity::Infinite());
    opt.Add(oracle::MaxFixedWeight(family, seq, stage.weights));
    // Heads: taking job 1 allows job 3 as well.
    if (adversary.Heads(t)) {
      CHECK(oracle::MaxFixedWeight(family, seq, stage.weights) == 2.0);
    } else {
      CHECK(oracle::MaxFixedWeight(family, seq, stage.weights) == 1.0);
    }
  }
  CHECK(std::fabs(heads / double(n) - 0.5) < 0.01);
  CHECK(std::fabs(opt.mean() - 1.5) < 0.01);
  CHECK_THROWS_AS(LemmaC1Adversary(1.5, 0), InputError);
}

TEST_CASE("geometric weight adversary") {
  const int n = 4;
  const double alpha = std::exp(-1.0);
  CHECK(LemmaC2Delta(n, alpha) == doctest::Approx((alpha - 1.0 / n) / 2));
  const LemmaC2Adversary adversary(n, alpha, 9);
  const double delta = adversary.delta();
  std::vector<int> counts(n + 1, 0);
  for (int t = 0; t < 20000; ++t) {
    const int k = adversary.K(t);
    REQUIRE(k >= 1);
    REQUIRE(k <= n);
    ++counts[k];
    const Stage stage = adversary.At(t);
    for (int i = 0; i < n; ++i) {
      const double expected = i < k ? std::pow(delta, k - i) : 0.0;
      CHECK(stage.weights[i] == doctest::Approx(expected));
    }
  }
  for (int k = 1; k <= n; ++k) {
    CHECK(std::fabs(counts[k] / 20000.0 - 1.0 / n) < 0.015);
  }
  // Guessing position 1 earns sum_k delta^k / n per stage, within the
  // per-interval bound delta + (n - 1) delta^2.
  double guess = 0.0;
  for (int k = 1; k <= n; ++k) guess += std::pow(delta, k);
  CHECK(guess <= delta + (n - 1) * delta * delta + 1e-15);
  CHECK_THROWS_AS(LemmaC2Delta(4, 0.2), InputError);
}

TEST_CASE("adversary specs") {
  const auto spec = AdversarySpecFromJson(
      nlohmann::json{{"kind", "constant"}, {"weights", {0.1, 0.2}}});
  CHECK(MakeAdversary(spec)->At(5).weights == std::vector<double>{0.1, 0.2});
  CHECK_THROWS_AS(AdversarySpecFromJson(nlohmann::json{{"kind", "nope"}}),
                  ConfigError);
  CHECK_THROWS_AS(MakeAdversary(AdversarySpecFromJson(nlohmann::json{
                      {"kind", "constant"}, {"weights", {1.2}}})),
                  ConfigError);
  const FileAdversary file(
      nlohmann::json{{"m", 2},
                     {"stages",
                      {{{"weights", {0.5, 0.5}}, {"activities", {-1, 0}}},
                       {{"weights", {0.0, 1.0}}}}}});
  CHECK(file.max_stages() == 2);
  CHECK(file.At(0).activities[0].is_infinite());
  CHECK(file.At(1).activities.empty());
  CHECK_THROWS_AS(file.At(2), ConfigError);
}

}  // namespace
}  // namespace dynsel
