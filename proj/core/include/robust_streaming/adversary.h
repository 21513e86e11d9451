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


#ifndef ROBUST_STREAMING_ADVERSARY_H_
#define ROBUST_STREAMING_ADVERSARY_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "robust_streaming/hashing.h"
#include "robust_streaming/stream.h"

namespace robust_streaming {

// What the adversary may see: its own past updates and the published
// outputs. Exact values and algorithm internals are not reachable from here.
class TranscriptView {
 public:
  TranscriptView(const std::vector<StreamUpdate>* updates,
                 const std::vector<double>* outputs,
                 const std::vector<std::vector<int64_t>>* heavy_sets)
      : updates_(updates), outputs_(outputs), heavy_sets_(heavy_sets) {}

  // Completed rounds.
  int64_t rounds() const { return static_cast<int64_t>(updates_->size()); }
  const StreamUpdate& update(int64_t round) const { return updates_->at(round); }
  // Output published after `round` updates; output(0) is for the empty
  // stream.
  double output(int64_t round) const { return outputs_->at(round); }
  double last_output() const { return outputs_->back(); }
  // Published heavy-hitter set after `round` updates, if the algorithm
  // publishes one.
  const std::vector<int64_t>* heavy_set(int64_t round) const {
    if (heavy_sets_ == nullptr || heavy_sets_->empty()) return nullptr;
    return &heavy_sets_->at(round);
  }

 private:
  const std::vector<StreamUpdate>* updates_;
  const std::vector<double>* outputs_;
  const std::vector<std::vector<int64_t>>* heavy_sets_;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  // The next update, or nullopt to halt.
  virtual std::optional<StreamUpdate> Next(const TranscriptView& view) = 0;
  virtual std::string_view name() const = 0;
};

struct AmsAttackConfig {
  int64_t rows = 64;  // t, known to the attacker
  double c = 8.0;
  int64_t budget = 64 * 50;
  int64_t n = 100000;
  uint64_t seed = 0;
  // Halt once the estimate drops below half of ||w||^2, which the attacker
  // knows because it wrote w.
  bool halt_on_success = true;
  double equality_tolerance = 1e-9;
};

// Adaptive attack on the AMS F2 sketch: plant a heavy coordinate, then probe
// fresh coordinates and double down on those whose insertion moved the
// estimate by less than one.
class AmsAttack : public Adversary {
 public:
  // Throws std::invalid_argument unless n >= 100 t. Halts early once all
  // fresh indices are used.
  explicit AmsAttack(const AmsAttackConfig& config);

  std::optional<StreamUpdate> Next(const TranscriptView& view) override;
  std::string_view name() const override { return "ams-attack"; }

  // ||w||^2 of the attacker's own stream.
  double planted_f2() const { return static_cast<double>(w_f2_); }
  bool succeeded() const { return succeeded_; }
  int64_t fresh_used() const { return next_fresh_ - 2; }

 private:
  enum class Phase { kInit, kProbe, kFollowUp };

  StreamUpdate Emit(int64_t index, int64_t delta);

  AmsAttackConfig config_;
  SplitMix64 coin_;
  Phase phase_ = Phase::kInit;
  int64_t next_fresh_ = 2;
  int64_t probe_index_ = 0;
  double old_ = 0.0;
  int64_t emitted_ = 0;
  std::vector<int64_t> w_;
  int64_t w_f2_ = 0;
  bool succeeded_ = false;
};

// Source of fresh updates for the replay adversary.
using FreshSource = std::function<int64_t(SplitMix64& rng)>;

// Identities not yet emitted, in random order; uniform once all of [1, n]
// has been used.
FreshSource UnseenIdentities(int64_t n);

struct ReplayConfig {
  int64_t n = 4096;
  int64_t m = 20000;
  uint64_t seed = 0;
  // Replays in a row before a fresh insert is forced. With no cap, an
  // estimate that ignores duplicates would be probed forever.
  int64_t max_consecutive_replays = 1;
};

// Inserts fresh identities while the published estimate keeps rising and
// replays the last fresh identity that failed to move it.
class ReplayAdversary : public Adversary {
 public:
  ReplayAdversary(const ReplayConfig& config, FreshSource fresh);

  std::optional<StreamUpdate> Next(const TranscriptView& view) override;
  std::string_view name() const override { return "replay"; }

  int64_t replays() const { return replays_; }
  int64_t fresh_inserts() const { return fresh_inserts_; }

 private:
  ReplayConfig config_;
  FreshSource fresh_;
  SplitMix64 rng_;
  int64_t emitted_ = 0;
  bool last_was_fresh_ = false;
  int64_t last_fresh_ = 0;
  double before_fresh_ = 0.0;
  int64_t stuck_ = 0;  // identity whose insertion failed to move the estimate
  int64_t consecutive_replays_ = 0;
  int64_t replays_ = 0;
  int64_t fresh_inserts_ = 0;
};

// The static adversary: a fixed script, regardless of outputs.
class ScriptedAdversary : public Adversary {
 public:
  explicit ScriptedAdversary(std::vector<StreamUpdate> script)
      : script_(std::move(script)) {}

  std::optional<StreamUpdate> Next(const TranscriptView& view) override;
  std::string_view name() const override { return "scripted"; }

 private:
  std::vector<StreamUpdate> script_;
  size_t next_ = 0;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_ADVERSARY_H_
