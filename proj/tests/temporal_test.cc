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

#include "dynsel/temporal.h"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "dynsel/errors.h"
#include "dynsel/projection.h"
#include "dynsel/random.h"
#include "oracles.h"

namespace dynsel {
namespace {

InstanceSequence Seq(std::vector<int64_t> arrivals,
                     std::vector<int64_t> activities) {
  std::vector<Element> elements;
  for (size_t i = 0; i < arrivals.size(); ++i) {
    elements.push_back({static_cast<int>(i), 1.0,
                        Activity::FromEncoded(activities[i]), arrivals[i]});
  }
  return InstanceSequence(std::move(elements));
}

TEST_CASE("expired elements do not block") {
  Rank1Ocrs ocrs(2);
  const FractionalPoint x({1.0, 1.0});
  const InstanceSequence seq = Seq({1, 2}, {0, 0});
  const double q = 1.0 - std::exp(-1.0);
  const auto exact = oracle::EnumerateGreedy(ocrs, x, seq, true);
  CHECK(exact.mismatches == 0);
  CHECK(exact.selected[0] == doctest::Approx(q).epsilon(1e-12));
  CHECK(exact.selected[1] == doctest::Approx(q).epsilon(1e-12));
  const int n = 100000;
  int both = 0;
  for (int seed = 0; seed < n; ++seed) {
    both += RunTemporal(ocrs, x, seq, seed).selected.size() == 2;
  }
  const double se = std::sqrt(q * q * (1 - q * q) / n);
  CHECK(std::fabs(both / double(n) - q * q) < 4 * se);
}

TEST_CASE("infinite activity keeps at most one element") {
  Rank1Ocrs ocrs(3);
  const FractionalPoint x({0.3, 0.3, 0.4});
  const InstanceSequence seq = Seq({1, 2, 3}, {-1, -1, -1});
  for (uint64_t seed = 0; seed < 2000; ++seed) {
    CHECK(RunTemporal(ocrs, x, seq, seed).selected.size() <= 1);
  }
}

TEST_CASE("infinite activity reduces to the base scheme") {
  MatchingOcrs ocrs({{0, 1}, {1, 2}, {0, 2}, {2, 3}}, 1.0);
  const FractionalPoint x({0.4, 0.3, 0.2, 0.5});
  const InstanceSequence seq = Seq({2, 4, 1, 3}, {-1, -1, -1, -1});
  for (uint64_t seed = 0; seed < 5000; ++seed) {
    CHECK(RunTemporal(ocrs, x, seq, seed).selected ==
          RunDirect(ocrs, x, seq, seed).selected);
  }
}

TEST_CASE("run frequencies match exact enumeration") {
  MatchingOcrs ocrs({{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}}, 1.0);
  const InstanceSequence seq = Seq({1, 2, 3, 4, 5}, {1, 0, 2, -1, 0});
  std::vector<double> raw = {0.5, 0.4, 0.5, 0.6, 0.3};
  std::vector<double> xv = raw;
  ShrinkIntoPolytope(TemporalPolytopeConstraints(ocrs.family(), seq, 1.0), xv);
  const FractionalPoint x(xv);
  const auto exact = oracle::EnumerateGreedy(ocrs, x, seq, true);
  CHECK(exact.mismatches == 0);
  const int n = 60000;
  std::vector<int> hits(5, 0);
  for (int seed = 0; seed < n; ++seed) {
    for (int e : RunTemporal(ocrs, x, seq, seed).selected) ++hits[e];
  }
  for (int e = 0; e < 5; ++e) {
    const double p = exact.selected[e];
    const double se = std::sqrt(p * (1 - p) / n) + 1e-12;
    CHECK(std::fabs(hits[e] / double(n) - p) < 4.5 * se);
    // Conditional on feasibility the acceptance rate is 1 - e^{-x}.
    CHECK(std::fabs(p / exact.feasible[e] - (1.0 - std::exp(-x[e]))) < 1e-12);
  }
}

TEST_CASE("precondition is enforced") {
  Rank1Ocrs ocrs(2);
  const InstanceSequence seq = Seq({1, 2}, {5, 0});
  CHECK_THROWS_AS(RunTemporal(ocrs, FractionalPoint({1.0, 1.0}), seq, 0),
                  PreconditionError);
  RunOptions loose;
  loose.check_precondition = false;
  CHECK_NOTHROW(RunTemporal(ocrs, FractionalPoint({1.0, 1.0}), seq, 0, loose));
  CHECK_NOTHROW(
      RunTemporal(ocrs, FractionalPoint({1.0, 1.0}), Seq({1, 2}, {0, 0}), 0));
}

TEST_CASE("outputs are temporally feasible on random panels") {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + rng.UniformInt(6);
    std::vector<int64_t> arrivals(m), activities(m);
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    rng.Shuffle(perm);
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
      arrivals[i] = perm[i] + 1;
      activities[i] = rng.UniformInt(4) - 1;
      edges.push_back({rng.UniformInt(3), 3 + rng.UniformInt(2)});
    }
    const InstanceSequence seq = Seq(arrivals, activities);
    MatchingOcrs ocrs(edges, 1.0);
    std::vector<double> xv(m, 1.0);
    ShrinkIntoPolytope(TemporalPolytopeConstraints(ocrs.family(), seq, 1.0),
                       xv);
    for (uint64_t seed = 0; seed < 300; ++seed) {
      RunOptions options;
      options.verify_output = false;
      const RunResult run =
          RunTemporal(ocrs, FractionalPoint(xv), seq, seed, options);
      CHECK(oracle::TemporallyFeasible(run.selected, seq, ocrs.family()));
    }
  }
}

TEST_CASE("selectable sampled elements are accepted") {
  Rank1Ocrs ocrs(5);
  const InstanceSequence seq = Seq({3, 1, 5, 2, 4}, {1, -1, 0, 2, 0});
  std::vector<double> xv(5, 1.0);
  ShrinkIntoPolytope(TemporalPolytopeConstraints(ocrs.family(), seq, 1.0), xv);
  const FractionalPoint x(xv);
  RunOptions options;
  options.track_selectability = true;
  for (uint64_t seed = 0; seed < 3000; ++seed) {
    const RunResult run = RunTemporal(ocrs, x, seq, seed, options);
    for (const TranscriptEntry& entry : run.transcript.entries) {
      REQUIRE(entry.selectable.has_value());
      if (*entry.selectable && entry.sampled) CHECK(entry.accepted);
    }
  }
}

TEST_CASE("rank one selectability by enumeration") {
  // Pr[e selectable] = r_e * prod over earlier active f of (1 - x_f r_f).
  Rank1Ocrs ocrs(4);
  const InstanceSequence seq = Seq({1, 2, 3, 4}, {1, 0, -1, 0});
  const FractionalPoint x({0.5, 0.4, 0.3, 0.6});
  const int m = 4;
  std::vector<double> enumerated(m, 0.0);
  for (uint32_t mask = 0; mask < (1u << (2 * m)); ++mask) {
    std::vector<bool> in_r(m), in_h(m);
    double p = 1.0;
    for (int e = 0; e < m; ++e) {
      in_r[e] = mask >> e & 1u;
      in_h[e] = mask >> (m + e) & 1u;
      p *= in_r[e] ? x[e] : 1 - x[e];
      p *= in_h[e] ? AcceptRatio(x[e]) : 1 - AcceptRatio(x[e]);
    }
    ocrs.InitWithDraw(x, in_h);
    for (int e = 0; e < m; ++e) {
      if (IsSelectable(ocrs, seq, in_r, e)) enumerated[e] += p;
    }
  }
  for (int e = 0; e < m; ++e) {
    double closed = AcceptRatio(x[e]);
    for (int f = 0; f < m; ++f) {
      if (f != e && oracle::ActiveAt(seq, f, e)) {
        closed *= 1 - x[f] * AcceptRatio(x[f]);
      }
    }
    CHECK(std::fabs(enumerated[e] - closed) < 1e-12);
    CHECK(enumerated[e] >= std::exp(-1.0) - 1e-12);
  }
}

}  // namespace
}  // namespace dynsel
