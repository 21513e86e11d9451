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

#ifndef ROBUST_STREAMING_PSTABLE_H_
#define ROBUST_STREAMING_PSTABLE_H_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "robust_streaming/sketch.h"

namespace robust_streaming {

struct PStableParams {
  double p = 1.0;
  double eps = 0.1;
  double delta = 0.05;
  // <= 0 selects DefaultPStableConstant(p).
  double c_k = 0.0;
  // Columns are cached while rows * cached columns stays under this.
  int64_t cache_entries = int64_t{1} << 24;
};

// 4 for p >= 1, 12 below: the median estimator's variance grows as the
// tails get heavier.
double DefaultPStableConstant(double p);
// k = ceil(c_k eps^-2 ln(2/delta)), rounded up to odd.
int PStableRows(const PStableParams& params);

// median |X| for standard p-stable X, from a fixed-seed 10^6-sample Monte
// Carlo run. Computed once per p and cached; thread-safe.
double PStableNormalization(double p);

// k running inner products <s_i, f> with i.i.d. p-stable entries
// regenerated from (seed, column).
class PStableSketch : public StaticSketch {
 public:
  PStableSketch(const PStableParams& params, uint64_t seed);

  void Update(const StreamUpdate& u) override;
  // F_p estimate, EstimateNorm()^p.
  double Query() const override;
  void Restart(uint64_t seed) override;
  SketchType type() const override { return SketchType::kPStable; }
  std::string_view name() const override { return "p-stable"; }
  std::vector<uint8_t> Serialize() const override;

  // median_i |<s_i, f>| / normalization.
  double EstimateNorm() const;
  double p() const { return params_.p; }
  int rows() const { return static_cast<int>(y_.size()); }
  double Entry(int row, int64_t column) const;
  const std::vector<double>& state() const { return y_; }
  void Merge(const PStableSketch& other);

 private:
  const std::vector<double>& Column(int64_t column) const;
  void FillColumn(int64_t column, std::vector<double>& out) const;

  PStableParams params_;
  uint64_t seed_;
  double normalization_;
  std::vector<double> y_;
  mutable std::unordered_map<int64_t, std::vector<double>> cache_;
  mutable std::vector<double> scratch_;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_PSTABLE_H_
