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

#ifndef ROBUST_STREAMING_AMS_H_
#define ROBUST_STREAMING_AMS_H_

#include <cstdint>
#include <vector>

#include "robust_streaming/sketch.h"

namespace robust_streaming {

// Dense AMS sketch y = S f with i.i.d. entries S_rc = +-1/sqrt(t). Signs are
// regenerated from (seed, row, column); only y is stored. Internally y is
// kept scaled by sqrt(t) so it stays integral and the estimate is exact.
class AmsSketch : public StaticSketch {
 public:
  AmsSketch(int rows, uint64_t seed);

  // t = ceil(c / eps^2) rows for the given relative accuracy; the failure
  // probability is handled by the caller.
  static int RowsFor(double eps, double c = 2.0);

  void Update(const StreamUpdate& u) override;
  // ||y||_2^2.
  double Query() const override;
  void Restart(uint64_t seed) override;
  SketchType type() const override { return SketchType::kAms; }
  std::string_view name() const override { return "ams"; }
  std::vector<uint8_t> Serialize() const override;

  int rows() const { return static_cast<int>(scaled_.size()); }
  // +1 or -1.
  int Sign(int row, int64_t column) const;
  // sqrt(t) * y.
  const std::vector<int64_t>& scaled_state() const { return scaled_; }
  // Adds another sketch's state (same seed and rows).
  void Merge(const AmsSketch& other);

 private:
  uint64_t seed_;
  std::vector<int64_t> scaled_;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_AMS_H_
