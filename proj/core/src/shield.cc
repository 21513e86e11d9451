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


#include "robust_streaming/shield.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "robust_streaming/f0_fast.h"
#include "robust_streaming/strong_track.h"

namespace robust_streaming {

uint64_t ShieldRange(int64_t m) {
  if (m < 1) throw std::invalid_argument("ShieldRange: m >= 1");
  const auto mm = static_cast<unsigned __int128>(m) * static_cast<uint64_t>(m);
  constexpr uint64_t kCap = uint64_t{1} << 60;
  if (mm >= kCap) return kCap;
  return std::max<uint64_t>(uint64_t{1} << 32,
                            std::bit_ceil(static_cast<uint64_t>(mm)));
}

ShieldedF0::ShieldedF0(std::unique_ptr<StaticSketch> inner, uint64_t key,
                       int64_t m)
    : inner_(std::move(inner)), key_(key), range_(ShieldRange(m)) {
  if (!inner_) throw std::invalid_argument("ShieldedF0: null inner sketch");
  if (!inner_->duplicate_insensitive()) {
    throw std::invalid_argument(
        "ShieldedF0: inner sketch is not duplicate-insensitive");
  }
}

uint64_t ShieldedF0::Pi(int64_t identity) const {
  return Mix64(key_ ^ Mix64(static_cast<uint64_t>(identity))) & (range_ - 1);
}

void ShieldedF0::Process(const StreamUpdate& u) {
  if (u.delta < 0) throw std::invalid_argument("ShieldedF0: insertion-only");
  inner_->Update({static_cast<int64_t>(Pi(u.index)), u.delta});
}

std::unique_ptr<ShieldedF0> MakeShieldedF0(const ShieldParams& params,
                                           const SeedTree& seeds) {
  F0FastParams f0;
  // At most m distinct images ever reach the sketch.
  f0.n = std::max<int64_t>(params.m, 2);
  f0.eps = params.eps;
  f0.delta = StrongTrackDelta(params.delta, params.m);
  auto inner = std::make_unique<F0FastSketch>(f0, seeds.Child("sketch").seed());
  return std::make_unique<ShieldedF0>(std::move(inner),
                                      seeds.Child("key").seed(), params.m);
}

}  // namespace robust_streaming
