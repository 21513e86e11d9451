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

#ifndef ROBUST_STREAMING_KMV_H_
#define ROBUST_STREAMING_KMV_H_

#include <cstdint>
#include <set>
#include <vector>

#include "robust_streaming/sketch.h"

namespace robust_streaming {

// k-minimum-values distinct counter: keeps the k smallest 53-bit hashes.
class KmvSketch : public StaticSketch {
 public:
  KmvSketch(int k, uint64_t seed);

  void Update(const StreamUpdate& u) override;
  // Exact count below k hashes, else (k - 1) / v_k with v_k in (0, 1].
  double Query() const override;
  void Restart(uint64_t seed) override;
  SketchType type() const override { return SketchType::kKmv; }
  std::string_view name() const override { return "kmv"; }
  std::vector<uint8_t> Serialize() const override;
  bool duplicate_insensitive() const override { return true; }

  uint64_t HashOf(int64_t identity) const;

 private:
  int k_;
  uint64_t seed_;
  std::set<uint64_t> smallest_;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_KMV_H_
