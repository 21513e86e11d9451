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

#ifndef ROBUST_STREAMING_SWITCHING_H_
#define ROBUST_STREAMING_SWITCHING_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "robust_streaming/algorithm.h"
#include "robust_streaming/hashing.h"
#include "robust_streaming/sketch.h"

namespace robust_streaming {

enum class SwitchMode { kPlain, kCyclic };
enum class Materialization { kEager, kLazy };

struct SwitchConfig {
  // Target accuracy; copies are expected to be (eps/8)-accurate.
  double eps = 0.1;
  // lambda for plain mode, lambda' for cyclic mode.
  int64_t copies = 8;
  SwitchMode mode = SwitchMode::kPlain;
  // Lazy builds a copy when it becomes active and replays the stream log
  // into it. Plain mode only; transcripts match eager mode exactly.
  Materialization materialization = Materialization::kEager;
  // g of the zero vector.
  double initial_output = 0.0;
  // Restart certification compares g values, so the norm ratio eps/100 is
  // raised to this power (p for F_p, 1 for F0).
  double certify_exponent = 1.0;
};

// Copies needed in cyclic mode so that a restarted copy is reused only after
// g has grown by (100/eps)^q: each switch grows g by at least
// (1 + eps/2)(1 - eps/8)/(1 + eps/8).
int64_t CyclicCopies(double eps, double q);

// Runs independent copies of a static sketch and publishes a held output
// that moves only when the active copy leaves its (1 +- eps/2) window; each
// move retires the active copy.
class SketchSwitcher : public StreamingAlgorithm {
 public:
  SketchSwitcher(const SwitchConfig& config, SketchFactory factory,
                 const SeedTree& seeds);

  void Process(const StreamUpdate& u) override;
  double Output() const override { return Publish(held_); }
  int64_t ActiveCopy() const override { return active_; }
  bool Exhausted() const override { return exhausted_; }

  // Feeds the copies without reading any of them.
  void Ingest(const StreamUpdate& u);

  double held() const { return held_; }
  int64_t switches() const { return switches_; }
  int64_t restarts() const { return restarts_; }
  int64_t uncertified_reuses() const { return uncertified_reuses_; }
  int64_t certified_reuses() const { return certified_reuses_; }
  // Queries made to a copy before it became active. Always zero unless the
  // read path is broken.
  int64_t hygiene_violations() const { return hygiene_violations_; }
  // Step at which each copy was first queried, or -1.
  const std::vector<int64_t>& first_query_step() const {
    return first_query_step_;
  }
  const std::vector<int64_t>& activation_step() const {
    return activation_step_;
  }
  const SwitchConfig& config() const { return config_; }
  int64_t materialized_copies() const;

 private:
  StaticSketch& Active();
  std::unique_ptr<StaticSketch> Build(int64_t copy);
  void Feed(const StreamUpdate& u);
  void Activate(int64_t copy);

  SwitchConfig config_;
  SketchFactory factory_;
  SeedTree seeds_;
  std::vector<std::unique_ptr<StaticSketch>> copies_;
  std::vector<StreamUpdate> log_;
  // Held value at the time each copy was restarted (cyclic mode).
  std::vector<std::optional<double>> restart_value_;
  std::vector<int64_t> first_query_step_;
  std::vector<int64_t> activation_step_;
  double held_;
  int64_t active_ = 0;
  int64_t step_ = 0;
  int64_t switches_ = 0;
  int64_t restarts_ = 0;
  int64_t uncertified_reuses_ = 0;
  int64_t certified_reuses_ = 0;
  int64_t hygiene_violations_ = 0;
  bool exhausted_ = false;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_SWITCHING_H_
