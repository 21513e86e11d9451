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

#include "robust_streaming/exact_sketch.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robust_streaming/serialize.h"

namespace robust_streaming {

StreamConfig ExactSketch::Unbounded() {
  StreamConfig config;
  config.n = int64_t{1} << 40;
  config.m = int64_t{1} << 40;
  config.M = int64_t{1} << 40;
  config.model = StreamModel::kTurnstile;
  return config;
}

ExactSketch::ExactSketch(QueryKind kind, double p)
    : kind_(kind), p_(p), tracker_(Unbounded(), kind == QueryKind::kF2 ? 2.0 : p) {
  if (kind != QueryKind::kF0 && kind != QueryKind::kFp &&
      kind != QueryKind::kF2 && kind != QueryKind::kEntropy) {
    throw std::invalid_argument("ExactSketch: unsupported query kind");
  }
}

void ExactSketch::Update(const StreamUpdate& u) { tracker_.Apply(u); }

double ExactSketch::Query() const {
  switch (kind_) {
    case QueryKind::kF0:
      return static_cast<double>(tracker_.F0());
    case QueryKind::kF2:
      return static_cast<double>(tracker_.F2());
    case QueryKind::kFp:
      if (p_ == 1.0) return static_cast<double>(tracker_.F1());
      if (p_ == 2.0) return static_cast<double>(tracker_.F2());
      return std::max(0.0, tracker_.Fp());
    case QueryKind::kEntropy:
      return std::exp2(tracker_.Entropy());
    default:
      return 0.0;
  }
}

void ExactSketch::Restart(uint64_t) { tracker_ = ExactTracker(Unbounded(), tracker_.p()); }

std::vector<uint8_t> ExactSketch::Serialize() const {
  std::vector<std::pair<int64_t, int64_t>> entries(
      tracker_.frequencies().counts().begin(),
      tracker_.frequencies().counts().end());
  std::sort(entries.begin(), entries.end());
  ByteWriter w(type());
  w.U8(static_cast<uint8_t>(kind_));
  w.F64(p_);
  w.U64(entries.size());
  for (const auto& [i, c] : entries) {
    w.I64(i);
    w.I64(c);
  }
  return w.Take();
}

}  // namespace robust_streaming
