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

#include "dynsel/ocrs.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dynsel/errors.h"
#include "dynsel/random.h"
#include "dynsel/temporal.h"
#include "oracles.h"

namespace dynsel {
namespace {

InstanceSequence Ordered(int m, Activity d = Activity::Infinite()) {
  std::vector<Element> elements;
  for (int i = 0; i < m; ++i) elements.push_back({i, 1.0, d, i + 1});
  return InstanceSequence(std::move(elements));
}

TEST_CASE("sample set extremes") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    CHECK(SampleR(FractionalPoint::Zeros(4), seed).empty());
    CHECK(SampleR(FractionalPoint({1.0, 1.0, 1.0}), seed) ==
          ElementSet{0, 1, 2});
  }
}

TEST_CASE("sample inclusion frequency") {
  const FractionalPoint x({0.5, 0.5, 0.5});
  const int n = 100000;
  std::vector<int> hits(3, 0);
  for (int seed = 0; seed < n; ++seed) {
    for (int e : SampleR(x, seed)) ++hits[e];
  }
  for (int e = 0; e < 3; ++e)
    CHECK(std::fabs(hits[e] / double(n) - 0.5) < 0.01);
}

TEST_CASE("accept ratio") {
  CHECK(AcceptRatio(0.0) == 1.0);
  CHECK(AcceptRatio(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(AcceptRatio(0.5) * 0.5 == doctest::Approx(1.0 - std::exp(-0.5)));
}

TEST_CASE("single element selection probability") {
  Rank1Ocrs ocrs(1);
  const FractionalPoint x({1.0});
  ocrs.Init(x, 0);
  CHECK(ocrs.SelectionProbability(0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  MatchingOcrs edge({{0, 1}}, 1.0);
  edge.Init(x, 0);
  CHECK(edge.SelectionProbability(0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  const int n = 100000;
  int hits = 0;
  for (int seed = 0; seed < n; ++seed) {
    hits += !RunTemporal(ocrs, x, Ordered(1), seed).selected.empty();
  }
  CHECK(std::fabs(hits / double(n) - (1.0 - std::exp(-1.0))) < 0.005);
}

TEST_CASE("unsampled elements are never accepted") {
  Rank1Ocrs ocrs(3);
  ocrs.InitWithDraw(FractionalPoint({0.3, 0.3, 0.3}), {true, true, true});
  CHECK_FALSE(ocrs.Observe(0, false, {}));
  CHECK(ocrs.Observe(0, true, {}));
  CHECK_FALSE(ocrs.Observe(1, true, std::vector<int>{0}));
}

TEST_CASE("selection probability at x = 0.5 matches replays") {
  // Fixed empty prefix, so the conditional probability is unconditional.
  Rank1Ocrs ocrs(2);
  const FractionalPoint x({0.5, 0.5});
  const int n = 100000;
  int hits = 0;
  for (int seed = 0; seed < n; ++seed) {
    const RunResult run = RunTemporal(ocrs, x, Ordered(2), seed);
    hits += run.transcript.entries[0].accepted;
  }
  CHECK(std::fabs(hits / double(n) - (1.0 - std::exp(-0.5))) < 0.005);
  ocrs.Init(x, 0);
  CHECK(ocrs.SelectionProbability(0) ==
        doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-15));
}

TEST_CASE("enumeration matches the closed form for rank one") {
  const int m = 4;
  Rank1Ocrs ocrs(m);
  const FractionalPoint x({0.1, 0.3, 0.2, 0.4});
  const auto result = oracle::EnumerateGreedy(ocrs, x, Ordered(m), false);
  CHECK(result.mismatches == 0);
  CHECK(result.total_probability == doctest::Approx(1.0).epsilon(1e-12));
  double prefix = 0.0;
  for (int e = 0; e < m; ++e) {
    const double closed = (1.0 - std::exp(-x[e])) * std::exp(-prefix);
    CHECK(std::fabs(result.selected[e] - closed) < 1e-12);
    CHECK(std::fabs(result.selected[e] / result.feasible[e] -
                    (1.0 - std::exp(-x[e]))) < 1e-12);
    prefix += x[e];
  }
}

TEST_CASE("star graph selection probabilities") {
  // Three edges on a common vertex, worst case for the last edge.
  MatchingOcrs ocrs({{0, 1}, {0, 2}, {0, 3}}, 1.0);
  const FractionalPoint x({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto result = oracle::EnumerateGreedy(ocrs, x, Ordered(3), false);
  CHECK(result.mismatches == 0);
  const double q = 1.0 - std::exp(-1.0 / 3);
  CHECK(std::fabs(result.selected[0] - q) < 1e-12);
  CHECK(std::fabs(result.selected[1] - q * (1 - q)) < 1e-12);
  CHECK(std::fabs(result.selected[2] - q * (1 - q) * (1 - q)) < 1e-12);
  for (int e = 0; e < 3; ++e) {
    CHECK(result.selected[e] >= std::exp(-2.0) * x[e]);
  }
}

TEST_CASE("scheme constants") {
  CHECK(Rank1Ocrs(2).constants().c == doctest::Approx(std::exp(-1.0)));
  CHECK(MatchingOcrs({{0, 1}}, 0.5).constants().c ==
        doctest::Approx(std::exp(-1.0)));
  CHECK(MatchingOcrs({{0, 1}}, 1.0).constants().c ==
        doctest::Approx(std::exp(-2.0)));
  CHECK_THROWS_AS(MatchingOcrs({{0, 1}}, 0.0), InputError);
  CHECK_THROWS_AS(MakeOcrs(ConstraintFamily::Knapsack({0.5}, 1.0), 1.0),
                  InputError);
}

TEST_CASE("transcript queries") {
  Rank1Ocrs ocrs(3);
  const FractionalPoint x({0.4, 0.3, 0.3});
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const RunResult run = RunTemporal(ocrs, x, Ordered(3), seed);
    for (int e = 0; e < 3; ++e) {
      const TranscriptEntry* entry = run.transcript.Find(e);
      REQUIRE(entry != nullptr);
      if (entry->accepted) {
        CHECK(SelectionProbability(run.transcript, e) ==
              doctest::Approx(1.0 - std::exp(-x[e])));
      } else {
        CHECK_THROWS_AS(SelectionProbability(run.transcript, e), QueryError);
      }
    }
    CHECK(run.transcript.Accepted() == run.selected);
  }
  const RunResult run = RunTemporal(ocrs, x, Ordered(3), 7);
  const std::string lines = TranscriptToJsonLines(run.transcript);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 3);
  CHECK(lines.find("\"accepted\"") != std::string::npos);
}

}  // namespace
}  // namespace dynsel
