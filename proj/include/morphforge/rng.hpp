// Copyright 2026 The Morphforge Authors
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

#ifndef MORPHFORGE_RNG_HPP_
#define MORPHFORGE_RNG_HPP_

#include <array>
#include <cstdint>

namespace morphforge {

// The project-wide generator is pinned to xoshiro256++ seeded through
// splitmix64. Identical seeds give identical streams on every platform;
// std::mt19937 & friends are deliberately avoided because distribution
// implementations differ across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t s = seed;
    for (auto& word : state_) word = SplitMix64(s);
  }

  uint64_t NextU64() {
    const uint64_t result = Rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = Rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double NextDouble() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + NextDouble() * (hi - lo); }

  bool Bernoulli(double p) { return NextDouble() < p; }

  // Uniform integer in [0, n) via the widening-multiply trick (no modulo bias
  // beyond 2^-64, no rejection loop). mulhi is spelled out in 32-bit halves so
  // the stream does not depend on __int128 availability.
  uint64_t NextBelow(uint64_t n) {
    const uint64_t x = NextU64();
    const uint64_t x_hi = x >> 32, x_lo = x & 0xffffffffULL;
    const uint64_t n_hi = n >> 32, n_lo = n & 0xffffffffULL;
    const uint64_t cross1 = x_hi * n_lo + ((x_lo * n_lo) >> 32);
    const uint64_t cross2 = x_lo * n_hi + (cross1 & 0xffffffffULL);
    return x_hi * n_hi + (cross1 >> 32) + (cross2 >> 32);
  }

  // Derives an independent per-sample stream; batch generation seeds sample i
  // from (seed ^ i) so samples can run concurrently.
  static Rng ForSample(uint64_t seed, uint64_t index) { return Rng(seed ^ index); }

  static uint64_t SplitMix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<uint64_t, 4> state_{};
};

}  // namespace morphforge

#endif  // MORPHFORGE_RNG_HPP_
