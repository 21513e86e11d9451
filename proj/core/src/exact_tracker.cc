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

#include "robust_streaming/exact_tracker.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace robust_streaming {

namespace {

double PowAbs(int64_t x, double p) {
  const double a = static_cast<double>(std::llabs(x));
  if (a == 0.0) return 0.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

double XLogX(int64_t x) {
  const double a = static_cast<double>(std::llabs(x));
  return a == 0.0 ? 0.0 : a * std::log2(a);
}

}  // namespace

ExactTracker::ExactTracker(const StreamConfig& config, double p)
    : config_(config), p_(p), f_(config.n), h_(config.n) {}

void ExactTracker::Apply(const StreamUpdate& u) {
  const int64_t before = f_[u.index];
  ApplyUpdateInPlace(f_, u, config_);
  const int64_t after = before + u.delta;

  l1_ += std::llabs(after) - std::llabs(before);
  f2_ += after * after - before * before;
  fp_ += PowAbs(after, p_) - PowAbs(before, p_);
  x_log_x_ += XLogX(after) - XLogX(before);
  if (before != 0) by_magnitude_.erase({std::llabs(before), u.index});
  if (after != 0) by_magnitude_.insert({std::llabs(after), u.index});

  const int64_t h_before = h_[u.index];
  const int64_t step = std::llabs(u.delta);
  h_.Add(u.index, step);
  h1_ += step;
  hp_ += PowAbs(h_before + step, p_) - PowAbs(h_before, p_);
}

double ExactTracker::L2() const { return std::sqrt(static_cast<double>(f2_)); }

double ExactTracker::Entropy() const {
  if (l1_ == 0) return 0.0;
  const double l1 = static_cast<double>(l1_);
  // H = log2(L1) - sum |f_i| log2 |f_i| / L1.
  return std::max(0.0, std::log2(l1) - x_log_x_ / l1);
}

std::vector<int64_t> ExactTracker::AtLeast(double threshold) const {
  std::vector<int64_t> out;
  for (auto it = by_magnitude_.rbegin(); it != by_magnitude_.rend(); ++it) {
    if (static_cast<double>(it->first) < threshold) break;
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int64_t ExactTracker::MaxAbs() const {
  return by_magnitude_.empty() ? 0 : by_magnitude_.rbegin()->first;
}

}  // namespace robust_streaming
