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

#ifndef ROBUST_STREAMING_COUNT_SKETCH_H_
#define ROBUST_STREAMING_COUNT_SKETCH_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "robust_streaming/hashing.h"
#include "robust_streaming/sketch.h"

namespace robust_streaming {

struct CountSketchParams {
  int64_t n = 1 << 16;
  double eps = 0.1;
  double delta = 0.05;
  double c_r = 4.0;
  double c_b = 6.0;
};

// r = ceil(c_r ln(n / delta)) rows, b = ceil(c_b / eps^2) buckets.
int CountSketchRows(const CountSketchParams& params);
int CountSketchBuckets(const CountSketchParams& params);

// r x b signed counters. Each row draws one 4-wise independent hash whose
// value v, scaled onto [0, 2b), gives the bucket (v >> 1) and the sign (v & 1).
//
// As a StaticSketch it tracks F2: Query() is the median over rows of the
// row's sum of squared counters.
class CountSketch : public StaticSketch {
 public:
  CountSketch(const CountSketchParams& params, uint64_t seed);
  CountSketch(int rows, int buckets, uint64_t seed);

  void Update(const StreamUpdate& u) override;
  double Query() const override;
  void Restart(uint64_t seed) override;
  SketchType type() const override { return SketchType::kCountSketch; }
  std::string_view name() const override { return "count-sketch"; }
  std::vector<uint8_t> Serialize() const override;

  // Median over rows of sign * counter.
  double PointQuery(int64_t i) const;

  int rows() const { return rows_; }
  int buckets() const { return buckets_; }
  int64_t counter(int row, int bucket) const {
    return counters_[static_cast<size_t>(row) * buckets_ + bucket];
  }
  // (bucket, sign) of identity i in a row.
  std::pair<int, int> Locate(int row, int64_t i) const;
  void Merge(const CountSketch& other);

 private:
  struct Powers {
    uint64_t x, x2, x3;
  };
  static Powers PowersOf(int64_t i);
  std::pair<int, int> LocateWith(int row, const Powers& pw) const;
  void Reseed(uint64_t seed);

  int rows_;
  int buckets_;
  uint64_t seed_;
  std::vector<KWiseHash> hashes_;
  // hashes_ coefficients, four per row, low degree first.
  std::vector<uint64_t> coeffs_;
  std::vector<int64_t> counters_;
  // Sum of squared counters per row, kept up to date on every update.
  std::vector<int64_t> row_squares_;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_COUNT_SKETCH_H_
