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

#include "robust_streaming/serialize.h"

#include <bit>
#include <stdexcept>

namespace robust_streaming {

ByteWriter::ByteWriter(SketchType type) {
  U32(kSketchMagic);
  U16(kSketchFormatVersion);
  U16(static_cast<uint16_t>(type));
}

void ByteWriter::U16(uint16_t v) {
  for (int i = 0; i < 2; ++i) bytes_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::U32(uint32_t v) {
  for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::U64(uint64_t v) {
  for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::F64(double v) { U64(std::bit_cast<uint64_t>(v)); }

ByteReader::ByteReader(std::span<const uint8_t> bytes, SketchType expected)
    : bytes_(bytes) {
  if (U32() != kSketchMagic) throw std::runtime_error("bad sketch magic");
  if (U16() != kSketchFormatVersion) {
    throw std::runtime_error("unsupported sketch format version");
  }
  if (U16() != static_cast<uint16_t>(expected)) {
    throw std::runtime_error("sketch type tag mismatch");
  }
}

void ByteReader::Need(size_t n) const {
  if (pos_ + n > bytes_.size()) throw std::runtime_error("truncated sketch blob");
}

uint8_t ByteReader::U8() {
  Need(1);
  return bytes_[pos_++];
}

uint16_t ByteReader::U16() {
  Need(2);
  uint16_t v = 0;
  for (int i = 0; i < 2; ++i) v |= static_cast<uint16_t>(bytes_[pos_++]) << (8 * i);
  return v;
}

uint32_t ByteReader::U32() {
  Need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(bytes_[pos_++]) << (8 * i);
  return v;
}

uint64_t ByteReader::U64() {
  Need(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(bytes_[pos_++]) << (8 * i);
  return v;
}

double ByteReader::F64() { return std::bit_cast<double>(U64()); }

}  // namespace robust_streaming
