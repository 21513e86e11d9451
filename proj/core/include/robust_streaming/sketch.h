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

#ifndef ROBUST_STREAMING_SKETCH_H_
#define ROBUST_STREAMING_SKETCH_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "robust_streaming/stream.h"

namespace robust_streaming {

// Type tags in the serialized header.
enum class SketchType : uint16_t {
  kF0Fast = 1,
  kAms = 2,
  kPStable = 3,
  kCountSketch = 4,
  kKmv = 5,
  kEntropy = 6,
  kExact = 7,
};

// A non-robust streaming sketch. Query() is the estimate of the tracked
// function g(f); it must not change state.
class StaticSketch {
 public:
  virtual ~StaticSketch() = default;

  virtual void Update(const StreamUpdate& u) = 0;
  virtual double Query() const = 0;
  // Zeroes all state and redraws randomness from `seed`.
  virtual void Restart(uint64_t seed) = 0;

  virtual SketchType type() const = 0;
  virtual std::string_view name() const = 0;
  // Versioned little-endian blob: magic, version, type tag, payload.
  virtual std::vector<uint8_t> Serialize() const = 0;
  // True if re-inserting an identity already present never changes the
  // serialized state.
  virtual bool duplicate_insensitive() const { return false; }
};

// Builds a fresh sketch from a seed.
using SketchFactory = std::function<std::unique_ptr<StaticSketch>(uint64_t)>;

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_SKETCH_H_
