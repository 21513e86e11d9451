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

#include "robust_streaming/switching.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace robust_streaming {

namespace {

constexpr int64_t kMaxEagerCopies = 100'000;

}  // namespace

int64_t CyclicCopies(double eps, double q) {
  if (!(eps > 0.0 && eps < 1.0) || !(q > 0.0)) {
    throw std::invalid_argument("CyclicCopies: eps in (0,1), q > 0");
  }
  const double growth = (1.0 + eps / 2) * (1.0 - eps / 8) / (1.0 + eps / 8);
  const double needed = q * std::log(100.0 / eps) / std::log(growth);
  return std::max<int64_t>(8, static_cast<int64_t>(std::ceil(needed))) + 1;
}

SketchSwitcher::SketchSwitcher(const SwitchConfig& config,
                               SketchFactory factory, const SeedTree& seeds)
    : config_(config),
      factory_(std::move(factory)),
      seeds_(seeds),
      held_(config.initial_output) {
  if (!(config.eps > 0.0 && config.eps < 1.0)) {
    throw std::invalid_argument("SketchSwitcher: eps in (0,1)");
  }
  if (config.copies < 1) throw std::invalid_argument("SketchSwitcher: copies >= 1");
  const bool lazy = config.materialization == Materialization::kLazy;
  if (lazy && config.mode == SwitchMode::kCyclic) {
    throw std::invalid_argument("SketchSwitcher: lazy copies need plain mode");
  }
  if (!lazy && config.copies > kMaxEagerCopies) {
    throw std::invalid_argument(
        "SketchSwitcher: too many eager copies; use lazy materialization");
  }
  copies_.resize(config.copies);
  restart_value_.resize(config.copies);
  first_query_step_.assign(config.copies, -1);
  activation_step_.assign(config.copies, -1);
  if (lazy) {
    copies_[0] = Build(0);
  } else {
    for (int64_t j = 0; j < config.copies; ++j) copies_[j] = Build(j);
  }
  activation_step_[0] = 1;
}

std::unique_ptr<StaticSketch> SketchSwitcher::Build(int64_t copy) {
  auto sketch = factory_(seeds_.Child("copy", copy).seed());
  if (!sketch) throw std::runtime_error("SketchSwitcher: factory returned null");
  return sketch;
}

StaticSketch& SketchSwitcher::Active() { return *copies_[active_]; }

int64_t SketchSwitcher::materialized_copies() const {
  return std::count_if(copies_.begin(), copies_.end(),
                       [](const auto& c) { return c != nullptr; });
}

void SketchSwitcher::Feed(const StreamUpdate& u) {
  if (config_.materialization == Materialization::kLazy) {
    log_.push_back(u);
    if (active_ < config_.copies) Active().Update(u);
    return;
  }
  for (auto& copy : copies_) copy->Update(u);
}

void SketchSwitcher::Ingest(const StreamUpdate& u) {
  if (!exhausted_) Feed(u);
}

void SketchSwitcher::Activate(int64_t copy) {
  activation_step_[copy] = step_ + 1;
  if (config_.materialization == Materialization::kLazy) {
    copies_[copy] = Build(copy);
    for (const StreamUpdate& u : log_) copies_[copy]->Update(u);
  }
  if (config_.mode == SwitchMode::kCyclic && restart_value_[copy]) {
    // The copy missed the prefix up to its restart. Upper-bound that prefix
    // and lower-bound the present value from (eps/8)-accurate estimates.
    const double eps = config_.eps;
    const double missed = *restart_value_[copy] / (1.0 - eps / 8);
    const double present = held_ / (1.0 + eps / 8);
    if (missed <= std::pow(eps / 100.0, config_.certify_exponent) * present) {
      ++certified_reuses_;
    } else {
      ++uncertified_reuses_;
    }
  }
}

void SketchSwitcher::Process(const StreamUpdate& u) {
  if (exhausted_) return;
  ++step_;
  if (active_ >= config_.copies) {
    exhausted_ = true;
    return;
  }
  Feed(u);

  if (step_ < activation_step_[active_]) ++hygiene_violations_;
  if (first_query_step_[active_] < 0) first_query_step_[active_] = step_;
  const double y = std::max(0.0, Active().Query());
  if (WithinRel(held_, y, config_.eps / 2)) return;

  held_ = y;
  ++switches_;
  const int64_t retired = active_;
  if (config_.mode == SwitchMode::kPlain) {
    if (config_.materialization == Materialization::kLazy) {
      copies_[retired].reset();
    }
    ++active_;
    if (active_ < config_.copies) Activate(active_);
    return;
  }
  copies_[retired]->Restart(seeds_.Child("restart", restarts_).seed());
  restart_value_[retired] = held_;
  ++restarts_;
  active_ = (active_ + 1) % config_.copies;
  Activate(active_);
}

}  // namespace robust_streaming
