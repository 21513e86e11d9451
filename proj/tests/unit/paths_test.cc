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


#include <cmath>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "robust_streaming/exact_sketch.h"
#include "robust_streaming/flipnum.h"
#include "robust_streaming/generators.h"
#include "robust_streaming/paths.h"
#include "robust_streaming/pstable.h"

namespace robust_streaming {
namespace {

TEST(ComputePathsDelta, LogDomainMatchesDirect) {
  PathsConfig c;
  c.delta = 0.05;
  c.m = 20;
  c.lambda = 2;
  c.output_bits = 4;
  const auto d = ComputePathsDelta(c);
  const double direct = 0.05 / (190.0 * 256.0);
  EXPECT_NEAR(d.theoretical, direct, 1e-12 * direct);
  EXPECT_FALSE(d.clamped);
  EXPECT_EQ(d.used, d.theoretical);
}

TEST(ComputePathsDelta, ClampsTinyValues) {
  PathsConfig c;
  c.m = 10000;
  c.lambda = 20;
  const auto d = ComputePathsDelta(c);
  EXPECT_TRUE(d.clamped);
  EXPECT_EQ(d.used, kMinFailureProbability);
  EXPECT_LT(d.log2_theoretical, -600);
  EXPECT_THROW(ComputePathsDelta(PathsConfig{.m = 5, .lambda = 6}),
               std::invalid_argument);
}

TEST(PathsWrapper, ExactStubIsHoldRound) {
  const OneShotFactory exact = [](double, uint64_t) {
    return std::make_unique<ExactSketch>(QueryKind::kFp, 1.0);
  };
  for (uint64_t game = 0; game < 100; ++game) {
    SplitMix64 rng(game);
    PathsConfig c;
    c.eps = 0.2;
    c.m = 300;
    c.lambda = 300;
    PathsWrapper w(c, exact, game);
    std::vector<double> outputs = {w.Output()};
    for (int t = 0; t < 300; ++t) {
      // Adaptive: lean toward deletions whenever the output is large.
      const bool del = w.Output() > 20 && (rng.Uniform01() < 0.6);
      w.Process({1 + static_cast<int64_t>(rng.Below(8)), del ? -1 : 1});
      outputs.push_back(w.Output());
    }
    ASSERT_EQ(outputs, HoldRound(w.inner_history(), c.eps));
    EXPECT_EQ(w.changes(), ZeroFlipNumber(outputs) - 1);
  }
}

TEST(PathsWrapper, BudgetExceededOffPromise) {
  const OneShotFactory exact = [](double, uint64_t) {
    return std::make_unique<ExactSketch>(QueryKind::kF0);
  };
  PathsConfig c;
  c.eps = 0.1;
  c.m = 1000;
  c.lambda = 3;
  PathsWrapper w(c, exact, 0);
  for (int64_t i = 1; i <= 1000 && !w.Exhausted(); ++i) w.Process({i, 1});
  EXPECT_TRUE(w.budget_exceeded());
  EXPECT_EQ(w.changes(), 4);
}

TEST(PathsWrapper, RecordsClampWarning) {
  const OneShotFactory exact = [](double delta, uint64_t) {
    EXPECT_EQ(delta, kMinFailureProbability);
    return std::make_unique<ExactSketch>(QueryKind::kF0);
  };
  PathsConfig c;
  c.m = 10000;
  c.lambda = 20;
  PathsWrapper w(c, exact, 0);
  ASSERT_EQ(w.Warnings().size(), 1u);
}

}  // namespace
}  // namespace robust_streaming
