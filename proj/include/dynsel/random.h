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

#ifndef DYNSEL_RANDOM_H_
#define DYNSEL_RANDOM_H_

#include <cstdint>
#include <span>
#include <vector>

namespace dynsel {

// Stream tags for keyed draws. A draw is a pure function of
// (seed, stream, key, sub), so the coin attached to an element does not
// depend on the position at which the element arrives.
enum class Stream : uint64_t {
  kSample = 1,     // e in R(x)
  kSubfamily = 2,  // e in H(x), the scheme's randomized subfamily
  kAdversary = 3,
  kMatching = 4,
  kExploration = 5,
  kPolicy = 6,
};

// splitmix64 finalizer.
uint64_t Mix64(uint64_t x);

uint64_t KeyedBits(uint64_t seed, Stream stream, uint64_t key,
                   uint64_t sub = 0);

// Uniform in [0, 1) with 53 bits of resolution.
double KeyedUniform(uint64_t seed, Stream stream, uint64_t key,
                    uint64_t sub = 0);

// Derives an independent seed for a sub-experiment.
uint64_t DeriveSeed(uint64_t seed, Stream stream, uint64_t key);

// Sequential generator (splitmix64). Output is identical on every platform,
// unlike the std:: distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64();
  double Uniform();
  // Uniform integer in [0, n). n must be positive.
  int UniformInt(int n);
  bool Bernoulli(double p) { return Uniform() < p; }

  // Fisher-Yates on `values`.
  void Shuffle(std::span<int> values);
  // k distinct values from [0, n), in draw order.
  std::vector<int> SampleWithoutReplacement(int n, int k);

 private:
  uint64_t state_;
};

}  // namespace dynsel

#endif  // DYNSEL_RANDOM_H_
