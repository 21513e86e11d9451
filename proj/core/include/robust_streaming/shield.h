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


#ifndef ROBUST_STREAMING_SHIELD_H_
#define ROBUST_STREAMING_SHIELD_H_

#include <cstdint>
#include <memory>

#include "robust_streaming/algorithm.h"
#include "robust_streaming/hashing.h"
#include "robust_streaming/sketch.h"

namespace robust_streaming {

// Smallest power of two >= max(m^2, 2^32), capped at 2^60.
uint64_t ShieldRange(int64_t m);

// Feeds a duplicate-insensitive F0 sketch keyed pseudorandom images of the
// identities instead of the identities themselves.
class ShieldedF0 : public StreamingAlgorithm {
 public:
  // Throws std::invalid_argument if `inner` is not duplicate-insensitive.
  ShieldedF0(std::unique_ptr<StaticSketch> inner, uint64_t key, int64_t m);

  void Process(const StreamUpdate& u) override;
  double Output() const override { return Publish(inner_->Query()); }

  uint64_t Pi(int64_t identity) const;
  uint64_t range() const { return range_; }
  const StaticSketch& inner() const { return *inner_; }

 private:
  std::unique_ptr<StaticSketch> inner_;
  uint64_t key_;
  uint64_t range_;
};

struct ShieldParams {
  int64_t m = 10000;
  double eps = 0.1;
  double delta = 0.05;
};

// A strong-tracking F0FastSketch (failure probability delta/m) behind the
// shield. Key and sketch seed are drawn from `seeds`.
std::unique_ptr<ShieldedF0> MakeShieldedF0(const ShieldParams& params,
                                           const SeedTree& seeds);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_SHIELD_H_
