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

#include "robust_streaming/hashing.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace robust_streaming {

namespace {

uint64_t HashLabel(std::string_view label) {
  // FNV-1a, then mixed.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return Mix64(h);
}

}  // namespace

uint64_t SplitMix64::Below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Below(0)");
  // Lemire's multiply-shift with rejection.
  uint64_t x = (*this)();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < bound) {
    const uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

SeedTree::SeedTree(uint64_t master)
    : master_(master), seed_(Mix64(master ^ 0x5eed5eed5eed5eedULL)) {}

SeedTree::SeedTree(uint64_t master, uint64_t seed,
                   std::vector<std::pair<std::string, uint64_t>> path)
    : master_(master), seed_(seed), path_(std::move(path)) {}

SeedTree SeedTree::Child(std::string_view label, uint64_t index) const {
  const uint64_t s =
      Mix64(Mix64(seed_ ^ HashLabel(label)) + Mix64(index ^ 0xa0761d6478bd642fULL));
  auto path = path_;
  path.emplace_back(std::string(label), index);
  return SeedTree(master_, s, std::move(path));
}

std::string SeedTree::PathString() const {
  std::string out = "master";
  for (const auto& [label, index] : path_) {
    out += "/" + label + "[" + std::to_string(index) + "]";
  }
  return out;
}

KWiseHash::KWiseHash(int degree, uint64_t seed, uint64_t range) {
  if (degree < 2) throw std::invalid_argument("KWiseHash: degree must be >= 2");
  if (range == 0 || (range & (range - 1)) != 0 || range > (uint64_t{1} << 48)) {
    throw std::invalid_argument("KWiseHash: range must be a power of two <= 2^48");
  }
  mask_ = range - 1;
  SplitMix64 rng(seed);
  coeffs_.reserve(degree);
  while (static_cast<int>(coeffs_.size()) < degree) {
    const uint64_t c = rng() >> 3;  // 61 bits
    if (c < kMersenne61) coeffs_.push_back(c);
  }
}

KWiseHash::KWiseHash(std::vector<uint64_t> coefficients, uint64_t range)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() < 2) {
    throw std::invalid_argument("KWiseHash: degree must be >= 2");
  }
  if (range == 0 || (range & (range - 1)) != 0 || range > (uint64_t{1} << 48)) {
    throw std::invalid_argument("KWiseHash: range must be a power of two <= 2^48");
  }
  for (uint64_t& c : coeffs_) c = Mod61(c);
  mask_ = range - 1;
}

double StableSample(SplitMix64& rng, double p) {
  if (!(p > 0.0 && p <= 2.0)) {
    throw std::invalid_argument("StableSample: p must be in (0,2]");
  }
  const double v = std::numbers::pi * (rng.Uniform01() - 0.5);
  const double w = -std::log(rng.Uniform01());
  if (p == 1.0) return std::tan(v);
  const double a = p;
  return std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
         std::pow(std::cos(v - a * v) / w, (1.0 - a) / a);
}

}  // namespace robust_streaming
