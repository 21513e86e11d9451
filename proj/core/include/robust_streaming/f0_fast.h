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

#ifndef ROBUST_STREAMING_F0_FAST_H_
#define ROBUST_STREAMING_F0_FAST_H_

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "robust_streaming/hashing.h"
#include "robust_streaming/sketch.h"

namespace robust_streaming {

struct F0FastParams {
  // Universe size; identities themselves may be any value below 2^61 - 1.
  int64_t n = 1 << 16;
  double eps = 0.1;
  double delta = 0.05;
  double c_b = 32.0;
  double c_d = 10.0;
};

struct F0FastShape {
  int ell = 0;      // levels are 0..ell
  int64_t B = 0;    // list capacity
  int d = 0;        // hash independence
  int64_t D = 0;    // exact-small capacity
};

// B = ceil(c_b eps^-2 (log2 log2 n + ln 1/delta)),
// d = ceil(c_d (log2 log2 n + ln 1/delta)), D = ceil(d / eps),
// ell = ceil(2.5 log2 n) clamped to [2 log2 n, 3 log2 n] and to 48.
F0FastShape ComputeF0FastShape(const F0FastParams& params);

// Level-sampling distinct-elements sketch. Each identity hashes to level j
// with 2^(ell-j-1) <= H(a) < 2^(ell-j) (H(a) = 0 maps to level ell); a level
// holding more than B identities is deleted for good. The first D distinct
// identities are also kept exactly.
//
// Level routing is deferred until the exact-small set overflows; the
// buffered identities are then routed in arrival order, which yields the
// same level state as routing each identity on arrival.
class F0FastSketch : public StaticSketch {
 public:
  F0FastSketch(const F0FastParams& params, uint64_t seed);

  void Update(const StreamUpdate& u) override;
  double Query() const override;
  void Restart(uint64_t seed) override;
  SketchType type() const override { return SketchType::kF0Fast; }
  std::string_view name() const override { return "f0-fast"; }
  std::vector<uint8_t> Serialize() const override;
  bool duplicate_insensitive() const override { return true; }

  const F0FastShape& shape() const { return shape_; }
  const std::vector<int64_t>& exact_small() const { return exact_order_; }
  bool overflowed() const { return overflowed_; }
  int64_t level_size(int j) const;
  bool level_deleted(int j) const { return deleted_[j] != 0; }
  // Identities held in the exact-small set plus all live levels.
  int64_t stored_identities() const;
  int LevelOf(int64_t identity) const;

 private:
  void Route(int64_t identity);

  F0FastParams params_;
  F0FastShape shape_;
  uint64_t seed_;
  KWiseHash hash_;
  std::vector<int64_t> exact_order_;
  std::unordered_set<int64_t> exact_set_;
  bool overflowed_ = false;
  std::vector<std::unordered_set<int64_t>> levels_;
  std::vector<uint8_t> deleted_;
  bool any_deleted_ = false;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_F0_FAST_H_
