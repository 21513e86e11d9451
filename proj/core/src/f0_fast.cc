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

#include "robust_streaming/f0_fast.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "robust_streaming/serialize.h"

namespace robust_streaming {

F0FastShape ComputeF0FastShape(const F0FastParams& params) {
  if (params.n < 2) throw std::invalid_argument("F0FastSketch: n >= 2");
  if (!(params.eps > 0.0 && params.eps < 1.0)) {
    throw std::invalid_argument("F0FastSketch: eps in (0,1)");
  }
  if (!(params.delta > 0.0 && params.delta < 1.0)) {
    throw std::invalid_argument("F0FastSketch: delta in (0,1)");
  }
  const double log_n = std::log2(static_cast<double>(params.n));
  const double log_log_n = std::log2(std::max(log_n, 1.0));
  const double budget = log_log_n + std::log(1.0 / params.delta);

  F0FastShape shape;
  const int lo = static_cast<int>(std::ceil(2.0 * log_n));
  const int hi = static_cast<int>(std::floor(3.0 * log_n));
  shape.ell = std::clamp(static_cast<int>(std::ceil(2.5 * log_n)), lo,
                         std::max(lo, hi));
  shape.ell = std::min(shape.ell, 48);
  if (shape.ell < lo) {
    throw std::invalid_argument("F0FastSketch: n too large for a 2^48 range");
  }
  shape.B = static_cast<int64_t>(
      std::ceil(params.c_b * budget / (params.eps * params.eps)));
  shape.d = std::max(2, static_cast<int>(std::ceil(params.c_d * budget)));
  shape.D = static_cast<int64_t>(std::ceil(shape.d / params.eps));
  return shape;
}

F0FastSketch::F0FastSketch(const F0FastParams& params, uint64_t seed)
    : params_(params),
      shape_(ComputeF0FastShape(params)),
      seed_(seed),
      hash_(shape_.d, seed, uint64_t{1} << shape_.ell),
      levels_(shape_.ell + 1),
      deleted_(shape_.ell + 1, 0) {}

int F0FastSketch::LevelOf(int64_t identity) const {
  const uint64_t h = hash_(static_cast<uint64_t>(identity));
  if (h == 0) return shape_.ell;
  return shape_.ell - std::bit_width(h);
}

void F0FastSketch::Route(int64_t identity) {
  const int j = LevelOf(identity);
  if (deleted_[j]) return;
  auto& level = levels_[j];
  level.insert(identity);
  if (static_cast<int64_t>(level.size()) > shape_.B) {
    level.clear();
    deleted_[j] = 1;
    any_deleted_ = true;
  }
}

void F0FastSketch::Update(const StreamUpdate& u) {
  if (u.delta < 0) {
    throw std::invalid_argument("F0FastSketch: turnstile update rejected");
  }
  if (u.delta == 0) return;
  if (u.index < 0 || static_cast<uint64_t>(u.index) >= kMersenne61) {
    throw std::invalid_argument("F0FastSketch: identity outside hash domain");
  }
  if (exact_set_.contains(u.index)) return;
  if (!overflowed_) {
    if (static_cast<int64_t>(exact_order_.size()) < shape_.D) {
      exact_order_.push_back(u.index);
      exact_set_.insert(u.index);
      return;
    }
    overflowed_ = true;
    for (int64_t id : exact_order_) Route(id);
  }
  Route(u.index);
}

double F0FastSketch::Query() const {
  if (!overflowed_) return static_cast<double>(exact_order_.size());
  if (!any_deleted_) {
    // Every distinct identity sits in exactly one level.
    int64_t total = 0;
    for (const auto& level : levels_) total += level.size();
    return static_cast<double>(total);
  }
  const double threshold = static_cast<double>(shape_.B) / 5.0;
  for (int i = shape_.ell; i >= 0; --i) {
    if (deleted_[i]) continue;
    const double size = static_cast<double>(levels_[i].size());
    if (size >= threshold) return std::ldexp(size, i + 1);
  }
  return static_cast<double>(shape_.D);
}

void F0FastSketch::Restart(uint64_t seed) {
  seed_ = seed;
  hash_ = KWiseHash(shape_.d, seed, uint64_t{1} << shape_.ell);
  exact_order_.clear();
  exact_set_.clear();
  overflowed_ = false;
  for (auto& level : levels_) level.clear();
  std::fill(deleted_.begin(), deleted_.end(), 0);
  any_deleted_ = false;
}

int64_t F0FastSketch::level_size(int j) const {
  return static_cast<int64_t>(levels_[j].size());
}

int64_t F0FastSketch::stored_identities() const {
  int64_t total = static_cast<int64_t>(exact_order_.size());
  for (const auto& level : levels_) total += level.size();
  return total;
}

std::vector<uint8_t> F0FastSketch::Serialize() const {
  ByteWriter w(type());
  w.I64(params_.n);
  w.F64(params_.eps);
  w.F64(params_.delta);
  w.F64(params_.c_b);
  w.F64(params_.c_d);
  w.U64(seed_);
  w.U8(overflowed_ ? 1 : 0);
  w.U64(exact_order_.size());
  for (int64_t id : exact_order_) w.I64(id);
  w.U32(static_cast<uint32_t>(levels_.size()));
  std::vector<int64_t> ids;
  for (size_t j = 0; j < levels_.size(); ++j) {
    w.U8(deleted_[j]);
    ids.assign(levels_[j].begin(), levels_[j].end());
    std::sort(ids.begin(), ids.end());
    w.U64(ids.size());
    for (int64_t id : ids) w.I64(id);
  }
  return w.Take();
}

}  // namespace robust_streaming
