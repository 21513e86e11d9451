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

#include "robust_streaming/kmv.h"

#include <stdexcept>

#include "robust_streaming/hashing.h"
#include "robust_streaming/serialize.h"

namespace robust_streaming {

KmvSketch::KmvSketch(int k, uint64_t seed) : k_(k), seed_(seed) {
  if (k < 2) throw std::invalid_argument("KmvSketch: k >= 2");
}

uint64_t KmvSketch::HashOf(int64_t identity) const {
  return Mix64(seed_ ^ Mix64(static_cast<uint64_t>(identity))) >> 11;
}

void KmvSketch::Update(const StreamUpdate& u) {
  if (u.delta < 0) throw std::invalid_argument("KmvSketch: insertion-only");
  const uint64_t h = HashOf(u.index);
  if (static_cast<int>(smallest_.size()) < k_) {
    smallest_.insert(h);
    return;
  }
  if (h < *smallest_.rbegin() && smallest_.insert(h).second) {
    smallest_.erase(std::prev(smallest_.end()));
  }
}

double KmvSketch::Query() const {
  if (static_cast<int>(smallest_.size()) < k_) {
    return static_cast<double>(smallest_.size());
  }
  const double v_k = (static_cast<double>(*smallest_.rbegin()) + 1.0) * 0x1.0p-53;
  return (k_ - 1) / v_k;
}

void KmvSketch::Restart(uint64_t seed) {
  seed_ = seed;
  smallest_.clear();
}

std::vector<uint8_t> KmvSketch::Serialize() const {
  ByteWriter w(type());
  w.U32(static_cast<uint32_t>(k_));
  w.U64(seed_);
  w.U64(smallest_.size());
  for (uint64_t h : smallest_) w.U64(h);
  return w.Take();
}

}  // namespace robust_streaming
