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

#include "robust_streaming/count_sketch.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robust_streaming/serialize.h"

namespace robust_streaming {

namespace {

double Median(std::vector<double>& values) {
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

int CountSketchRows(const CountSketchParams& params) {
  if (params.n < 1 || !(params.delta > 0.0 && params.delta < 1.0)) {
    throw std::invalid_argument("CountSketch: n >= 1, delta in (0,1)");
  }
  return std::max(1, static_cast<int>(std::ceil(
                         params.c_r * std::log(params.n / params.delta))));
}

int CountSketchBuckets(const CountSketchParams& params) {
  if (!(params.eps > 0.0 && params.eps < 1.0)) {
    throw std::invalid_argument("CountSketch: eps in (0,1)");
  }
  return static_cast<int>(std::ceil(params.c_b / (params.eps * params.eps)));
}

CountSketch::CountSketch(const CountSketchParams& params, uint64_t seed)
    : CountSketch(CountSketchRows(params), CountSketchBuckets(params), seed) {}

CountSketch::CountSketch(int rows, int buckets, uint64_t seed)
    : rows_(rows), buckets_(buckets), seed_(seed) {
  if (rows < 1 || buckets < 1) {
    throw std::invalid_argument("CountSketch: rows and buckets >= 1");
  }
  counters_.assign(static_cast<size_t>(rows) * buckets, 0);
  row_squares_.assign(rows, 0);
  Reseed(seed);
}

void CountSketch::Reseed(uint64_t seed) {
  seed_ = seed;
  hashes_.clear();
  hashes_.reserve(rows_);
  coeffs_.clear();
  coeffs_.reserve(static_cast<size_t>(rows_) * 4);
  for (int r = 0; r < rows_; ++r) {
    hashes_.emplace_back(4, Mix64(seed + 0x632be59bd9b4e019ULL * (r + 1)),
                         uint64_t{1} << 48);
    const auto& c = hashes_.back().coefficients();
    coeffs_.insert(coeffs_.end(), c.begin(), c.end());
  }
}

CountSketch::Powers CountSketch::PowersOf(int64_t i) {
  const uint64_t x = Mod61(static_cast<uint64_t>(i));
  const uint64_t x2 = MulMod61(x, x);
  return {x, x2, MulMod61(x2, x)};
}

std::pair<int, int> CountSketch::LocateWith(int row, const Powers& pw) const {
  // c0 + c1 x + c2 x^2 + c3 x^3 with the three products folded once each;
  // the sum stays below 2^64 and equals the Horner value after reduction.
  const uint64_t* c = &coeffs_[static_cast<size_t>(row) * 4];
  auto fold = [](uint64_t a, uint64_t b) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    return (static_cast<uint64_t>(prod) & kMersenne61) +
           static_cast<uint64_t>(prod >> 61);
  };
  const uint64_t field = Mod61(Mod61(c[0] + fold(c[1], pw.x) +
                                     fold(c[2], pw.x2) + fold(c[3], pw.x3)));
  // Multiply-shift maps the field value onto [0, 2b) without a division.
  const uint64_t v = static_cast<uint64_t>(
      (static_cast<unsigned __int128>(field) *
       (2 * static_cast<uint64_t>(buckets_))) >>
      61);
  return {static_cast<int>(v >> 1), (v & 1) ? 1 : -1};
}

std::pair<int, int> CountSketch::Locate(int row, int64_t i) const {
  return LocateWith(row, PowersOf(i));
}

void CountSketch::Update(const StreamUpdate& u) {
  const Powers pw = PowersOf(u.index);
  for (int r = 0; r < rows_; ++r) {
    const auto [bucket, sign] = LocateWith(r, pw);
    int64_t& c = counters_[static_cast<size_t>(r) * buckets_ + bucket];
    const int64_t step = sign * u.delta;
    row_squares_[r] += step * (2 * c + step);
    c += step;
  }
}

double CountSketch::Query() const {
  std::vector<double> per_row(rows_);
  for (int r = 0; r < rows_; ++r) per_row[r] = static_cast<double>(row_squares_[r]);
  return Median(per_row);
}

double CountSketch::PointQuery(int64_t i) const {
  std::vector<double> per_row(rows_);
  const Powers pw = PowersOf(i);
  for (int r = 0; r < rows_; ++r) {
    const auto [bucket, sign] = LocateWith(r, pw);
    per_row[r] = static_cast<double>(
        sign * counters_[static_cast<size_t>(r) * buckets_ + bucket]);
  }
  return Median(per_row);
}

void CountSketch::Restart(uint64_t seed) {
  std::fill(counters_.begin(), counters_.end(), 0);
  std::fill(row_squares_.begin(), row_squares_.end(), 0);
  Reseed(seed);
}

void CountSketch::Merge(const CountSketch& other) {
  if (other.seed_ != seed_ || other.rows_ != rows_ ||
      other.buckets_ != buckets_) {
    throw std::invalid_argument("CountSketch::Merge: incompatible sketches");
  }
  for (size_t k = 0; k < counters_.size(); ++k) counters_[k] += other.counters_[k];
  for (int r = 0; r < rows_; ++r) {
    int64_t sum = 0;
    for (int b = 0; b < buckets_; ++b) {
      const int64_t c = counter(r, b);
      sum += c * c;
    }
    row_squares_[r] = sum;
  }
}

std::vector<uint8_t> CountSketch::Serialize() const {
  ByteWriter w(type());
  w.U64(seed_);
  w.U32(static_cast<uint32_t>(rows_));
  w.U32(static_cast<uint32_t>(buckets_));
  for (int64_t c : counters_) w.I64(c);
  return w.Take();
}

}  // namespace robust_streaming
