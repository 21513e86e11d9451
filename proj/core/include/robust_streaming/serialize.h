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

#ifndef ROBUST_STREAMING_SERIALIZE_H_
#define ROBUST_STREAMING_SERIALIZE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "robust_streaming/sketch.h"

namespace robust_streaming {

inline constexpr uint32_t kSketchMagic = 0x4B535352;  // "RSSK"
inline constexpr uint16_t kSketchFormatVersion = 1;

class ByteWriter {
 public:
  explicit ByteWriter(SketchType type);

  void U8(uint8_t v) { bytes_.push_back(v); }
  void U16(uint16_t v);
  void U32(uint32_t v);
  void U64(uint64_t v);
  void I64(int64_t v) { U64(static_cast<uint64_t>(v)); }
  void F64(double v);

  std::vector<uint8_t> Take() { return std::move(bytes_); }

 private:
  std::vector<uint8_t> bytes_;
};

class ByteReader {
 public:
  // Validates magic, version and type tag; throws std::runtime_error.
  ByteReader(std::span<const uint8_t> bytes, SketchType expected);

  uint8_t U8();
  uint16_t U16();
  uint32_t U32();
  uint64_t U64();
  int64_t I64() { return static_cast<int64_t>(U64()); }
  double F64();
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void Need(size_t n) const;

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_SERIALIZE_H_
