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


#include "robust_streaming/adversary.h"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace robust_streaming {

AmsAttack::AmsAttack(const AmsAttackConfig& config)
    : config_(config), coin_(config.seed) {
  if (config.rows < 1 || !(config.c > 0.0) || config.budget < 1) {
    throw std::invalid_argument("AmsAttack: rows, c and budget must be positive");
  }
  if (config.n < 100 * config.rows) {
    throw std::invalid_argument("AmsAttack: need n >= 100 * rows");
  }
  w_.assign(2, 0);
}

StreamUpdate AmsAttack::Emit(int64_t index, int64_t delta) {
  if (static_cast<int64_t>(w_.size()) <= index) w_.resize(index + 1, 0);
  w_f2_ += 2 * w_[index] * delta + delta * delta;
  w_[index] += delta;
  ++emitted_;
  return {index, delta};
}

std::optional<StreamUpdate> AmsAttack::Next(const TranscriptView& view) {
  if (phase_ == Phase::kInit) {
    phase_ = Phase::kProbe;
    const auto heavy = static_cast<int64_t>(
        std::llround(config_.c * std::sqrt(static_cast<double>(config_.rows))));
    return Emit(1, std::max<int64_t>(heavy, 1));
  }
  const double estimate = view.last_output();
  if (estimate < 0.5 * planted_f2()) {
    succeeded_ = true;
    if (config_.halt_on_success) return std::nullopt;
  }
  if (emitted_ >= config_.budget) return std::nullopt;

  if (phase_ == Phase::kFollowUp) {
    const double diff = estimate - old_;
    const bool below = diff < 1.0 - config_.equality_tolerance;
    const bool equal = std::abs(diff - 1.0) <= config_.equality_tolerance;
    phase_ = Phase::kProbe;
    if (below || (equal && coin_.Coin())) {
      const int64_t i = probe_index_;
      probe_index_ = 0;
      return Emit(i, 1);
    }
  }
  old_ = estimate;
  if (next_fresh_ > config_.n) return std::nullopt;
  probe_index_ = next_fresh_++;
  phase_ = Phase::kFollowUp;
  return Emit(probe_index_, 1);
}

FreshSource UnseenIdentities(int64_t n) {
  if (n < 1) throw std::invalid_argument("UnseenIdentities: n >= 1");
  auto pool = std::make_shared<std::vector<int64_t>>();
  pool->reserve(n);
  for (int64_t i = 1; i <= n; ++i) pool->push_back(i);
  return [pool, n](SplitMix64& rng) {
    if (pool->empty()) return static_cast<int64_t>(rng.Below(n)) + 1;
    const size_t k = rng.Below(pool->size());
    std::swap((*pool)[k], pool->back());
    const int64_t id = pool->back();
    pool->pop_back();
    return id;
  };
}

ReplayAdversary::ReplayAdversary(const ReplayConfig& config, FreshSource fresh)
    : config_(config), fresh_(std::move(fresh)), rng_(config.seed) {
  if (!fresh_) throw std::invalid_argument("ReplayAdversary: no fresh source");
  if (config.max_consecutive_replays < 0) {
    throw std::invalid_argument("ReplayAdversary: negative replay cap");
  }
}

std::optional<StreamUpdate> ReplayAdversary::Next(const TranscriptView& view) {
  if (emitted_ >= config_.m) return std::nullopt;
  ++emitted_;
  const double now = view.last_output();
  if (last_was_fresh_ && !(now > before_fresh_)) stuck_ = last_fresh_;
  const bool moved = last_was_fresh_ && now > before_fresh_;
  if (!moved && stuck_ != 0 &&
      consecutive_replays_ < config_.max_consecutive_replays) {
    ++consecutive_replays_;
    ++replays_;
    last_was_fresh_ = false;
    return StreamUpdate{stuck_, 1};
  }
  consecutive_replays_ = 0;
  ++fresh_inserts_;
  last_was_fresh_ = true;
  before_fresh_ = now;
  last_fresh_ = fresh_(rng_);
  return StreamUpdate{last_fresh_, 1};
}

std::optional<StreamUpdate> ScriptedAdversary::Next(const TranscriptView&) {
  if (next_ >= script_.size()) return std::nullopt;
  return script_[next_++];
}

}  // namespace robust_streaming
