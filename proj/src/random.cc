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

#include "dynsel/random.h"

#include <cassert>
#include <numeric>
#include <utility>

namespace dynsel {
namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

double ToUnit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

uint64_t KeyedBits(uint64_t seed, Stream stream, uint64_t key, uint64_t sub) {
  uint64_t h = Mix64(seed + kGolden);
  h = Mix64(h ^ (static_cast<uint64_t>(stream) * kGolden));
  h = Mix64(h ^ (key + 1) * 0xd1342543de82ef95ULL);
  h = Mix64(h ^ (sub + 1) * 0xa0761d6478bd642fULL);
  return h;
}

double KeyedUniform(uint64_t seed, Stream stream, uint64_t key, uint64_t sub) {
  return ToUnit(KeyedBits(seed, stream, key, sub));
}

uint64_t DeriveSeed(uint64_t seed, Stream stream, uint64_t key) {
  return KeyedBits(seed, stream, key, 0x5eed);
}

uint64_t Rng::NextU64() {
  state_ += kGolden;
  return Mix64(state_);
}

double Rng::Uniform() { return ToUnit(NextU64()); }

int Rng::UniformInt(int n) {
  assert(n > 0);
  const uint64_t bound = static_cast<uint64_t>(n);
  // Rejection keeps the draw exactly uniform.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t r;
  do {
    r = NextU64();
  } while (r >= limit);
  return static_cast<int>(r % bound);
}

void Rng::Shuffle(std::span<int> values) {
  for (int i = static_cast<int>(values.size()) - 1; i > 0; --i) {
    const int j = UniformInt(i + 1);
    std::swap(values[i], values[j]);
  }
}

std::vector<int> Rng::SampleWithoutReplacement(int n, int k) {
  assert(k >= 0 && k <= n);
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + UniformInt(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace dynsel
