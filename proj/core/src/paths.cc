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


#include "robust_streaming/paths.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace robust_streaming {

PathsDelta ComputePathsDelta(const PathsConfig& config) {
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw std::invalid_argument("PathsConfig: delta in (0,1)");
  }
  if (config.m < 1 || config.lambda < 0 || config.lambda > config.m) {
    throw std::invalid_argument("PathsConfig: need 0 <= lambda <= m, m >= 1");
  }
  const double m = static_cast<double>(config.m);
  const double lambda = static_cast<double>(config.lambda);
  const double ln_choose = std::lgamma(m + 1) - std::lgamma(lambda + 1) -
                           std::lgamma(m - lambda + 1);
  PathsDelta out;
  out.log2_theoretical = std::log2(config.delta) - ln_choose / std::log(2.0) -
                         config.output_bits * lambda;
  out.theoretical = std::exp2(out.log2_theoretical);
  out.clamped = out.log2_theoretical < std::log2(config.min_delta);
  out.used = out.clamped ? config.min_delta : out.theoretical;
  return out;
}

PathsWrapper::PathsWrapper(const PathsConfig& config,
                           const OneShotFactory& factory, uint64_t seed)
    : config_(config), delta_(ComputePathsDelta(config)) {
  if (!(config.eps > 0.0 && config.eps < 1.0)) {
    throw std::invalid_argument("PathsConfig: eps in (0,1)");
  }
  if (delta_.clamped) {
    std::ostringstream msg;
    msg << "computation-paths failure probability 2^" << delta_.log2_theoretical
        << " clamped to " << delta_.used;
    warnings_.push_back(msg.str());
  }
  inner_ = factory(delta_.used, seed);
  if (!inner_) throw std::runtime_error("PathsWrapper: factory returned null");
  held_ = Publish(inner_->Query());
  inner_history_.push_back(held_);
}

void PathsWrapper::Process(const StreamUpdate& u) {
  inner_->Update(u);
  const double v = Publish(inner_->Query());
  inner_history_.push_back(v);
  if (WithinRel(held_, v, config_.eps / 2)) return;
  held_ = v;
  if (++changes_ > config_.lambda) budget_exceeded_ = true;
}

}  // namespace robust_streaming
