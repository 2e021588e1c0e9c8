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

#include "dynsel/stats.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dynsel/random.h"

namespace dynsel {
namespace {

TEST_CASE("running statistics") {
  RunningStat a, b, all;
  const std::vector<double> xs = {1.0, 4.0, 2.0, 8.0, 5.0, 7.0};
  for (size_t i = 0; i < xs.size(); ++i) {
    (i < 3 ? a : b).Add(xs[i]);
    all.Add(xs[i]);
  }
  CHECK(all.mean() == doctest::Approx(4.5));
  CHECK(all.variance() == doctest::Approx(7.5));
  a.Merge(b);
  CHECK(a.mean() == doctest::Approx(all.mean()));
  CHECK(a.variance() == doctest::Approx(all.variance()));
  CHECK(all.StdError() == doctest::Approx(std::sqrt(7.5 / 6)));
  CHECK(BinomialStdError(0.5, 100) == doctest::Approx(0.05));
}

TEST_CASE("line fits") {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {3, 5, 7, 9};
  const LineFit f = FitLine(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  std::vector<double> t, r;
  for (int k = 4; k < 10; ++k) {
    t.push_back(std::pow(2.0, k));
    r.push_back(3.0 * std::pow(2.0, 0.5 * k));
  }
  CHECK(FitLogLog(t, r).slope == doctest::Approx(0.5));
}

TEST_CASE("keyed draws are reproducible and spread") {
  CHECK(KeyedUniform(1, Stream::kSample, 5) ==
        KeyedUniform(1, Stream::kSample, 5));
  CHECK(KeyedUniform(1, Stream::kSample, 5) !=
        KeyedUniform(1, Stream::kSubfamily, 5));
  RunningStat s;
  for (int i = 0; i < 100000; ++i) s.Add(KeyedUniform(7, Stream::kPolicy, i));
  CHECK(std::fabs(s.mean() - 0.5) < 0.005);
  CHECK(std::fabs(s.variance() - 1.0 / 12) < 0.002);
  Rng rng(3);
  const std::vector<int> pick = rng.SampleWithoutReplacement(10, 10);
  std::vector<int> sorted = pick;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 10; ++i) CHECK(sorted[i] == i);
}

}  // namespace
}  // namespace dynsel
