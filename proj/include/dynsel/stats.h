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

#ifndef DYNSEL_STATS_H_
#define DYNSEL_STATS_H_

#include <cstdint>
#include <span>

namespace dynsel {

// Welford accumulator.
class RunningStat {
 public:
  void Add(double x);
  void Merge(const RunningStat& other);

  int64_t count() const { return n_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; 0 with fewer than two samples.
  double variance() const;
  double StdError() const;

 private:
  int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// sqrt(p (1 - p) / n).
double BinomialStdError(double p, int64_t n);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit FitLine(std::span<const double> x, std::span<const double> y);
// Least squares on (log x, log y). Throws InputError for non-positive data.
LineFit FitLogLog(std::span<const double> x, std::span<const double> y);

}  // namespace dynsel

#endif  // DYNSEL_STATS_H_
