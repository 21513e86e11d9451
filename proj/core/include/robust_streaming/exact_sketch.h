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

#ifndef ROBUST_STREAMING_EXACT_SKETCH_H_
#define ROBUST_STREAMING_EXACT_SKETCH_H_

#include <cstdint>
#include <vector>

#include "robust_streaming/exact_tracker.h"
#include "robust_streaming/sketch.h"

namespace robust_streaming {

// Stand-in "sketch" that answers exactly: F0, Fp, F2, or 2^H for entropy.
// Used to check wrapper logic against the flip-number machinery.
class ExactSketch : public StaticSketch {
 public:
  ExactSketch(QueryKind kind, double p = 1.0);

  void Update(const StreamUpdate& u) override;
  double Query() const override;
  void Restart(uint64_t seed) override;
  SketchType type() const override { return SketchType::kExact; }
  std::string_view name() const override { return "exact"; }
  std::vector<uint8_t> Serialize() const override;
  bool duplicate_insensitive() const override {
    return kind_ == QueryKind::kF0;
  }

 private:
  static StreamConfig Unbounded();

  QueryKind kind_;
  double p_;
  ExactTracker tracker_;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_EXACT_SKETCH_H_
