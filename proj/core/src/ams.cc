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

#include "robust_streaming/ams.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robust_streaming/hashing.h"
#include "robust_streaming/serialize.h"

namespace robust_streaming {

namespace {

// 64 sign bits for rows [64 * block, 64 * block + 64) of one column.
uint64_t SignBlock(uint64_t seed, int64_t column, int block) {
  return Mix64(Mix64(seed ^ static_cast<uint64_t>(column)) +
               static_cast<uint64_t>(block) * 0xd1b54a32d192ed03ULL);
}

}  // namespace

AmsSketch::AmsSketch(int rows, uint64_t seed) : seed_(seed), scaled_(rows, 0) {
  if (rows < 1) throw std::invalid_argument("AmsSketch: rows >= 1");
}

int AmsSketch::RowsFor(double eps, double c) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("AmsSketch: eps in (0,1)");
  }
  return static_cast<int>(std::ceil(c / (eps * eps)));
}

int AmsSketch::Sign(int row, int64_t column) const {
  const uint64_t bits = SignBlock(seed_, column, row / 64);
  return ((bits >> (row % 64)) & 1) ? 1 : -1;
}

void AmsSketch::Update(const StreamUpdate& u) {
  const int t = rows();
  for (int block = 0; block * 64 < t; ++block) {
    const uint64_t bits = SignBlock(seed_, u.index, block);
    const int end = std::min(t, block * 64 + 64);
    for (int r = block * 64; r < end; ++r) {
      const int64_t sign = ((bits >> (r - block * 64)) & 1) ? 1 : -1;
      scaled_[r] += sign * u.delta;
    }
  }
}

double AmsSketch::Query() const {
  // Exact integer sum of squares, then one division.
  unsigned __int128 total = 0;
  for (int64_t v : scaled_) {
    total += static_cast<unsigned __int128>(static_cast<__int128>(v) * v);
  }
  return static_cast<double>(total) / static_cast<double>(scaled_.size());
}

void AmsSketch::Restart(uint64_t seed) {
  seed_ = seed;
  std::fill(scaled_.begin(), scaled_.end(), 0);
}

void AmsSketch::Merge(const AmsSketch& other) {
  if (other.seed_ != seed_ || other.rows() != rows()) {
    throw std::invalid_argument("AmsSketch::Merge: incompatible sketches");
  }
  for (size_t r = 0; r < scaled_.size(); ++r) scaled_[r] += other.scaled_[r];
}

std::vector<uint8_t> AmsSketch::Serialize() const {
  ByteWriter w(type());
  w.U64(seed_);
  w.U32(static_cast<uint32_t>(scaled_.size()));
  for (int64_t v : scaled_) w.I64(v);
  return w.Take();
}

}  // namespace robust_streaming
