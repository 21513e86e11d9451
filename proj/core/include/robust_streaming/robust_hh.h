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


#ifndef ROBUST_STREAMING_ROBUST_HH_H_
#define ROBUST_STREAMING_ROBUST_HH_H_

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "robust_streaming/algorithm.h"
#include "robust_streaming/count_sketch.h"
#include "robust_streaming/exact_tracker.h"
#include "robust_streaming/hashing.h"
#include "robust_streaming/switching.h"

namespace robust_streaming {

struct RobustHHParams {
  int64_t n = 4096;
  int64_t m = 20000;
  double eps = 0.2;
  double delta = 0.05;
  // Exact counting until ||f||_1 reaches ceil(warmup_c / eps^2).
  double warmup_c = 40.0;
  // F2 tracker copies: count-sketch F2 estimators with this many rows and
  // ceil(tracker_c_b / (eps/8)^2) buckets.
  int tracker_rows = 5;
  double tracker_c_b = 2.0;
  // Point-query copies, built at eps/4.
  double cs_c_r = 4.0;
  double cs_c_b = 6.0;
};

// Count-sketch copies cycled so that a restarted copy is queried again only
// after ||f||_2 has grown by 100/eps.
int64_t HeavyHitterCopies(double eps);

// L2 heavy hitters for insertion-only streams. The published table and set
// change only when the tracked ||f||_2 crosses a power of (1 + eps/2).
class RobustHeavyHitters : public StreamingAlgorithm {
 public:
  RobustHeavyHitters(const RobustHHParams& params, const SeedTree& seeds);

  void Process(const StreamUpdate& u) override;
  // Published F2 estimate.
  double Output() const override { return Publish(r_ * r_); }
  int64_t ActiveCopy() const override { return next_copy_; }
  bool Exhausted() const override { return tracker_->Exhausted(); }
  const std::vector<int64_t>* HeavySet() const override { return &heavy_; }

  // Published estimate of f_i; 0 for identities without a table entry.
  double PointEstimate(int64_t i) const;
  // Published ||f||_2 estimate.
  double r() const { return r_; }
  bool warming_up() const { return warming_up_; }
  int64_t refreshes() const { return refreshes_; }
  int64_t copies() const { return static_cast<int64_t>(sketches_.size()); }
  int64_t warmup_length() const { return warmup_; }
  const SketchSwitcher& tracker() const { return *tracker_; }

 private:
  void Refresh();

  RobustHHParams params_;
  SeedTree seeds_;
  std::unique_ptr<SketchSwitcher> tracker_;
  std::vector<CountSketch> sketches_;
  ExactTracker exact_;
  int64_t warmup_;
  bool warming_up_ = true;
  std::unordered_set<int64_t> touched_set_;
  std::vector<int64_t> touched_;
  std::unordered_map<int64_t, double> table_;
  std::vector<int64_t> heavy_;
  double r_ = 0.0;
  int64_t level_ = 0;
  bool has_level_ = false;
  int64_t next_copy_ = 0;
  int64_t refreshes_ = 0;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_ROBUST_HH_H_
