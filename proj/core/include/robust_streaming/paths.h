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


#ifndef ROBUST_STREAMING_PATHS_H_
#define ROBUST_STREAMING_PATHS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "robust_streaming/algorithm.h"
#include "robust_streaming/sketch.h"
#include "robust_streaming/strong_track.h"

namespace robust_streaming {

struct PathsConfig {
  double eps = 0.1;
  double delta = 0.05;
  int64_t m = 1;
  // Flip budget of the tracked function on the promised stream class.
  int64_t lambda = 1;
  int output_bits = 32;
  double min_delta = kMinFailureProbability;
};

struct PathsDelta {
  // log2 of delta / (C(m, lambda) * 2^(bits * lambda)).
  double log2_theoretical = 0.0;
  // The same value as a double; 0 when it underflows.
  double theoretical = 0.0;
  // What the inner sketch is built with.
  double used = 0.0;
  bool clamped = false;
};

PathsDelta ComputePathsDelta(const PathsConfig& config);

// One inner sketch at a tiny failure probability whose estimates pass
// through hold-rounding.
class PathsWrapper : public StreamingAlgorithm {
 public:
  PathsWrapper(const PathsConfig& config, const OneShotFactory& factory,
               uint64_t seed);

  void Process(const StreamUpdate& u) override;
  double Output() const override { return held_; }
  // Set when the output changed more than lambda times: the stream left the
  // promised class.
  bool Exhausted() const override { return budget_exceeded_; }
  std::vector<std::string> Warnings() const override { return warnings_; }

  const PathsDelta& delta() const { return delta_; }
  int64_t changes() const { return changes_; }
  bool budget_exceeded() const { return budget_exceeded_; }
  // Published inner estimates, starting with the one for the empty stream.
  const std::vector<double>& inner_history() const { return inner_history_; }
  const StaticSketch& inner() const { return *inner_; }

 private:
  PathsConfig config_;
  PathsDelta delta_;
  std::unique_ptr<StaticSketch> inner_;
  std::vector<double> inner_history_;
  std::vector<std::string> warnings_;
  double held_ = 0.0;
  int64_t changes_ = 0;
  bool budget_exceeded_ = false;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_PATHS_H_
