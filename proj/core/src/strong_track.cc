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

#include "robust_streaming/strong_track.h"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace robust_streaming {

double StrongTrackDelta(double delta, int64_t m, double min_delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("StrongTrack: delta in (0,1)");
  }
  if (m < 1) throw std::invalid_argument("StrongTrack: m >= 1");
  const double per_step = delta / static_cast<double>(m);
  if (per_step < min_delta) {
    std::ostringstream msg;
    msg << "StrongTrack: delta/m = " << per_step << " is below the minimum "
        << min_delta << "; use a larger delta or a shorter stream";
    throw std::invalid_argument(msg.str());
  }
  return per_step;
}

SketchFactory StrongTrack(OneShotFactory one_shot, double delta, int64_t m,
                          double min_delta) {
  const double per_step = StrongTrackDelta(delta, m, min_delta);
  return [one_shot = std::move(one_shot), per_step](uint64_t seed) {
    return one_shot(per_step, seed);
  };
}

}  // namespace robust_streaming
