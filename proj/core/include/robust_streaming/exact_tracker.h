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

#ifndef ROBUST_STREAMING_EXACT_TRACKER_H_
#define ROBUST_STREAMING_EXACT_TRACKER_H_

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "robust_streaming/stream.h"

namespace robust_streaming {

// Exact frequency state with O(log n) incremental maintenance of the
// aggregates the game harness checks after every round.
class ExactTracker {
 public:
  // `p` selects which Fp sum is maintained incrementally.
  explicit ExactTracker(const StreamConfig& config, double p = 1.0);

  // Validates against the config and applies. Throws on violations, leaving
  // the state untouched.
  void Apply(const StreamUpdate& u);

  const StreamConfig& config() const { return config_; }
  const FrequencyVector& frequencies() const { return f_; }
  int64_t F0() const { return f_.support(); }
  int64_t F1() const { return l1_; }
  int64_t F2() const { return f2_; }
  double L2() const;
  double Fp() const { return fp_; }
  double p() const { return p_; }
  // Shannon entropy of |f| / ||f||_1 in bits; 0 for the zero vector.
  double Entropy() const;
  // ||h||_1 and ||h||_p^p of the absolute-value stream h_i = sum |delta|.
  int64_t AbsoluteStreamF1() const { return h1_; }
  double AbsoluteStreamFp() const { return hp_; }

  // Indices with |f_i| >= threshold.
  std::vector<int64_t> AtLeast(double threshold) const;
  // Largest |f_i| (0 if empty).
  int64_t MaxAbs() const;

 private:
  StreamConfig config_;
  double p_;
  FrequencyVector f_;
  FrequencyVector h_;
  int64_t l1_ = 0;
  int64_t f2_ = 0;
  double fp_ = 0.0;
  double x_log_x_ = 0.0;
  int64_t h1_ = 0;
  double hp_ = 0.0;
  std::set<std::pair<int64_t, int64_t>> by_magnitude_;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_EXACT_TRACKER_H_
