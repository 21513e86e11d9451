// Copyright 2026 Google LLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBUST_STREAMING_HASHING_H_
#define ROBUST_STREAMING_HASHING_H_

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace robust_streaming {

inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

// splitmix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t Mod61(uint64_t x) {
  x = (x & kMersenne61) + (x >> 61);
  return x >= kMersenne61 ? x - kMersenne61 : x;
}

inline uint64_t MulMod61(uint64_t a, uint64_t b) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  const uint64_t lo = static_cast<uint64_t>(prod) & kMersenne61;
  const uint64_t hi = static_cast<uint64_t>(prod >> 61);
  return Mod61(lo + hi);
}

// Small counter-based generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<uint64_t>::max();
  }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0, 1).
  double Uniform01() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }
  // Uniform integer in [0, bound).
  uint64_t Below(uint64_t bound);
  bool Coin() { return ((*this)() >> 63) != 0; }

 private:
  uint64_t state_;
};

// Deterministic seed derivation along a (label, index) path.
class SeedTree {
 public:
  explicit SeedTree(uint64_t master);

  SeedTree Child(std::string_view label, uint64_t index = 0) const;
  uint64_t seed() const { return seed_; }
  uint64_t master() const { return master_; }
  const std::vector<std::pair<std::string, uint64_t>>& path() const {
    return path_;
  }
  // Human-readable "label[index]/..." form for logs.
  std::string PathString() const;

 private:
  SeedTree(uint64_t master, uint64_t seed,
           std::vector<std::pair<std::string, uint64_t>> path);

  uint64_t master_;
  uint64_t seed_;
  std::vector<std::pair<std::string, uint64_t>> path_;
};

// Polynomial hash of degree d-1 over GF(2^61 - 1), reduced to [0, range).
class KWiseHash {
 public:
  // `range` must be a power of two no larger than 2^48.
  KWiseHash(int degree, uint64_t seed, uint64_t range);
  // Explicit coefficients c_0..c_{d-1} (constant term first).
  KWiseHash(std::vector<uint64_t> coefficients, uint64_t range);

  // x must be in [0, 2^61 - 1).
  uint64_t operator()(uint64_t x) const { return FieldValue(x) & mask_; }
  // Polynomial value in the field before range reduction.
  uint64_t FieldValue(uint64_t x) const {
    uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = Mod61(MulMod61(acc, x) + *it);
    }
    return acc;
  }

  int degree() const { return static_cast<int>(coeffs_.size()); }
  uint64_t range() const { return mask_ + 1; }
  const std::vector<uint64_t>& coefficients() const { return coeffs_; }

 private:
  std::vector<uint64_t> coeffs_;
  uint64_t mask_;
};

// One standard p-stable variate by the Chambers-Mallows-Stuck transform.
// p = 1 is standard Cauchy; p = 2 is N(0, 2).
double StableSample(SplitMix64& rng, double p);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_HASHING_H_
