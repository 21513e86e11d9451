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

#include "robust_streaming/pstable.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "robust_streaming/hashing.h"
#include "robust_streaming/serialize.h"

namespace robust_streaming {

namespace {

constexpr int kNormalizationSamples = 1'000'000;
constexpr uint64_t kNormalizationSeed = 0x6e6f726d616c697aULL;

}  // namespace

double DefaultPStableConstant(double p) { return p >= 1.0 ? 4.0 : 12.0; }

int PStableRows(const PStableParams& params) {
  if (!(params.p > 0.0 && params.p <= 2.0)) {
    throw std::invalid_argument("PStableSketch: p in (0,2]");
  }
  if (!(params.eps > 0.0 && params.eps < 1.0) ||
      !(params.delta > 0.0 && params.delta < 1.0)) {
    throw std::invalid_argument("PStableSketch: eps, delta in (0,1)");
  }
  const double c =
      params.c_k > 0.0 ? params.c_k : DefaultPStableConstant(params.p);
  const double k =
      std::ceil(c * std::log(2.0 / params.delta) / (params.eps * params.eps));
  if (k > 1e8) throw std::invalid_argument("PStableSketch: too many rows");
  int rows = static_cast<int>(k);
  if (rows % 2 == 0) ++rows;
  return rows;
}

double PStableNormalization(double p) {
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  SplitMix64 rng(kNormalizationSeed);
  std::vector<double> draws(kNormalizationSamples);
  for (double& x : draws) x = std::abs(StableSample(rng, p));
  const size_t mid = draws.size() / 2;
  std::nth_element(draws.begin(), draws.begin() + mid, draws.end());
  const double upper = draws[mid];
  const double lower = *std::max_element(draws.begin(), draws.begin() + mid);
  const double median = 0.5 * (lower + upper);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(p, median).first->second;
}

PStableSketch::PStableSketch(const PStableParams& params, uint64_t seed)
    : params_(params),
      seed_(seed),
      normalization_(PStableNormalization(params.p)),
      y_(PStableRows(params), 0.0) {}

void PStableSketch::FillColumn(int64_t column, std::vector<double>& out) const {
  SplitMix64 rng(Mix64(seed_ ^ Mix64(static_cast<uint64_t>(column))));
  out.resize(y_.size());
  for (double& x : out) x = StableSample(rng, params_.p);
}

const std::vector<double>& PStableSketch::Column(int64_t column) const {
  if (auto it = cache_.find(column); it != cache_.end()) return it->second;
  const int64_t cached = static_cast<int64_t>(cache_.size() + 1) * rows();
  if (cached <= params_.cache_entries) {
    auto& slot = cache_[column];
    FillColumn(column, slot);
    return slot;
  }
  FillColumn(column, scratch_);
  return scratch_;
}

double PStableSketch::Entry(int row, int64_t column) const {
  return Column(column)[row];
}

void PStableSketch::Update(const StreamUpdate& u) {
  const std::vector<double>& col = Column(u.index);
  const double d = static_cast<double>(u.delta);
  for (size_t r = 0; r < y_.size(); ++r) y_[r] += d * col[r];
}

double PStableSketch::EstimateNorm() const {
  std::vector<double> abs_values(y_.size());
  for (size_t r = 0; r < y_.size(); ++r) abs_values[r] = std::abs(y_[r]);
  const size_t mid = abs_values.size() / 2;
  std::nth_element(abs_values.begin(), abs_values.begin() + mid,
                   abs_values.end());
  return abs_values[mid] / normalization_;
}

double PStableSketch::Query() const {
  const double norm = EstimateNorm();
  return params_.p == 1.0 ? norm : std::pow(norm, params_.p);
}

void PStableSketch::Restart(uint64_t seed) {
  seed_ = seed;
  std::fill(y_.begin(), y_.end(), 0.0);
  cache_.clear();
}

void PStableSketch::Merge(const PStableSketch& other) {
  if (other.seed_ != seed_ || other.rows() != rows() ||
      other.params_.p != params_.p) {
    throw std::invalid_argument("PStableSketch::Merge: incompatible sketches");
  }
  for (size_t r = 0; r < y_.size(); ++r) y_[r] += other.y_[r];
}

std::vector<uint8_t> PStableSketch::Serialize() const {
  ByteWriter w(type());
  w.F64(params_.p);
  w.U64(seed_);
  w.U32(static_cast<uint32_t>(y_.size()));
  for (double v : y_) w.F64(v);
  return w.Take();
}

}  // namespace robust_streaming
