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


#include "robust_streaming/robust_hh.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robust_streaming {

namespace {

StreamConfig InsertionConfig(const RobustHHParams& params) {
  StreamConfig config;
  config.n = params.n;
  config.m = params.m;
  config.M = std::max<int64_t>(params.m, 1);
  config.model = StreamModel::kInsertionOnly;
  return config;
}

}  // namespace

int64_t HeavyHitterCopies(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("HeavyHitterCopies: eps in (0,1)");
  }
  const double needed = std::log(100.0 / eps) / std::log1p(eps / 2);
  return std::max<int64_t>(8, static_cast<int64_t>(std::ceil(needed))) + 1;
}

RobustHeavyHitters::RobustHeavyHitters(const RobustHHParams& params,
                                       const SeedTree& seeds)
    : params_(params),
      seeds_(seeds),
      exact_(InsertionConfig(params)),
      warmup_(static_cast<int64_t>(
          std::ceil(params.warmup_c / (params.eps * params.eps)))) {
  if (!(params.eps > 0.0 && params.eps < 1.0)) {
    throw std::invalid_argument("RobustHeavyHitters: eps in (0,1)");
  }
  const double eps_copy = params.eps / 8;
  const int tracker_buckets = static_cast<int>(
      std::ceil(params.tracker_c_b / (eps_copy * eps_copy)));
  const int tracker_rows = params.tracker_rows;
  SwitchConfig sc;
  sc.eps = params.eps;
  sc.mode = SwitchMode::kCyclic;
  sc.copies = CyclicCopies(params.eps, 2.0);
  sc.certify_exponent = 2.0;
  tracker_ = std::make_unique<SketchSwitcher>(
      sc,
      [tracker_rows, tracker_buckets](uint64_t seed) {
        return std::make_unique<CountSketch>(tracker_rows, tracker_buckets,
                                             seed);
      },
      seeds.Child("f2"));

  CountSketchParams cs;
  cs.n = params.n;
  cs.eps = params.eps / 4;
  cs.delta = params.delta;
  cs.c_r = params.cs_c_r;
  cs.c_b = params.cs_c_b;
  const int64_t copies = HeavyHitterCopies(params.eps);
  sketches_.reserve(copies);
  for (int64_t j = 0; j < copies; ++j) {
    sketches_.emplace_back(cs, seeds.Child("point", j).seed());
  }
}

double RobustHeavyHitters::PointEstimate(int64_t i) const {
  if (warming_up_) return static_cast<double>(exact_.frequencies()[i]);
  auto it = table_.find(i);
  return it == table_.end() ? 0.0 : it->second;
}

void RobustHeavyHitters::Process(const StreamUpdate& u) {
  if (u.delta < 0) {
    throw std::invalid_argument("RobustHeavyHitters: insertion-only stream");
  }
  for (CountSketch& s : sketches_) s.Update(u);
  if (touched_set_.insert(u.index).second) touched_.push_back(u.index);

  if (warming_up_) {
    exact_.Apply(u);
    if (exact_.F1() < warmup_) {
      tracker_->Ingest(u);
      r_ = exact_.L2();
      heavy_ = exact_.AtLeast(std::nextafter(0.75 * params_.eps * r_, 1e300));
      std::sort(heavy_.begin(), heavy_.end());
      return;
    }
    warming_up_ = false;
    exact_ = ExactTracker(InsertionConfig(params_));
  }
  tracker_->Process(u);

  const double r = std::sqrt(std::max(0.0, tracker_->held()));
  if (r <= 0.0) return;
  const auto level =
      static_cast<int64_t>(std::floor(std::log(r) / std::log1p(params_.eps / 2)));
  if (has_level_ && level <= level_) return;
  has_level_ = true;
  level_ = level;
  r_ = r;
  Refresh();
}

void RobustHeavyHitters::Refresh() {
  CountSketch& s = sketches_[next_copy_];
  table_.clear();
  heavy_.clear();
  const double threshold = 0.75 * params_.eps * r_;
  for (int64_t i : touched_) {
    const double estimate = s.PointQuery(i);
    if (estimate != 0.0) table_[i] = estimate;
    if (estimate > threshold) heavy_.push_back(i);
  }
  std::sort(heavy_.begin(), heavy_.end());
  s.Restart(seeds_.Child("point-restart", refreshes_).seed());
  ++refreshes_;
  next_copy_ = (next_copy_ + 1) % static_cast<int64_t>(sketches_.size());
}

}  // namespace robust_streaming
