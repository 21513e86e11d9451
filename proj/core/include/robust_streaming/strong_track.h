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

#ifndef ROBUST_STREAMING_STRONG_TRACK_H_
#define ROBUST_STREAMING_STRONG_TRACK_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>

#include "robust_streaming/sketch.h"

namespace robust_streaming {

inline const double kMinFailureProbability = std::ldexp(1.0, -60);

// Builds a one-shot sketch with failure probability `delta` from `seed`.
using OneShotFactory =
    std::function<std::unique_ptr<StaticSketch>(double delta, uint64_t seed)>;

// delta / m. Throws std::invalid_argument below `min_delta`.
double StrongTrackDelta(double delta, int64_t m,
                        double min_delta = kMinFailureProbability);

// Union bound over the m steps of a stream: every instance is built at
// failure probability delta / m.
SketchFactory StrongTrack(OneShotFactory one_shot, double delta, int64_t m,
                          double min_delta = kMinFailureProbability);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_STRONG_TRACK_H_
