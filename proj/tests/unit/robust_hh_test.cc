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


#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "robust_streaming/exact_tracker.h"
#include "robust_streaming/generators.h"
#include "robust_streaming/robust_hh.h"

namespace robust_streaming {
namespace {

StreamConfig Config(int64_t n, int64_t m) {
  StreamConfig c;
  c.n = n;
  c.m = m;
  c.M = m;
  c.model = StreamModel::kInsertionOnly;
  return c;
}

TEST(HeavyHitterCopies, Formula) {
  EXPECT_EQ(HeavyHitterCopies(0.2),
            static_cast<int64_t>(std::ceil(std::log(500.0) / std::log(1.1))) + 1);
  EXPECT_EQ(HeavyHitterCopies(0.99), 
            std::max<int64_t>(8, std::ceil(std::log(100 / 0.99) / std::log1p(0.495))) + 1);
}

TEST(RobustHeavyHitters, WarmupIsExact) {
  RobustHHParams p;
  p.n = 64;
  p.m = 100;
  RobustHeavyHitters hh(p, SeedTree(1));
  EXPECT_EQ(hh.warmup_length(), 1000);
  ExactTracker exact(Config(64, 100));
  for (int t = 0; t < 100; ++t) {
    const StreamUpdate u{1 + t % 5 + (t % 3 == 0 ? 10 : 0), 1};
    hh.Process(u);
    exact.Apply(u);
    ASSERT_TRUE(hh.warming_up());
    for (int64_t i = 1; i <= 64; ++i) {
      ASSERT_EQ(hh.PointEstimate(i), exact.frequencies()[i]);
    }
  }
}

TEST(RobustHeavyHitters, OutputOnlyMovesAtRefreshes) {
  RobustHHParams p;
  p.n = 4096;
  p.m = 20000;
  RobustHeavyHitters hh(p, SeedTree(2));
  const auto stream =
      InsertionStream(ItemDistribution::Zipf(4096, 1.2), 20000, 20000, 2);
  std::vector<int64_t> prev;
  int64_t prev_refreshes = 0;
  for (const auto& u : stream) {
    hh.Process(u);
    if (!hh.warming_up() && hh.refreshes() == prev_refreshes) {
      ASSERT_EQ(*hh.HeavySet(), prev);
    }
    prev = *hh.HeavySet();
    prev_refreshes = hh.refreshes();
  }
  EXPECT_FALSE(hh.warming_up());
  EXPECT_GT(hh.refreshes(), 0);
  EXPECT_LE(hh.refreshes(), 2 * hh.copies());
  EXPECT_EQ(hh.tracker().hygiene_violations(), 0);
}

TEST(RobustHeavyHitters, FindsDominantItem) {
  RobustHHParams p;
  const auto stream = InsertionStream(ItemDistribution::SingleHeavy(4096, 0.3),
                                      20000, 20000, 3);
  RobustHeavyHitters hh(p, SeedTree(3));
  ExactTracker exact(Config(4096, 20000));
  for (const auto& u : stream) {
    hh.Process(u);
    exact.Apply(u);
  }
  const auto& set = *hh.HeavySet();
  EXPECT_TRUE(std::binary_search(set.begin(), set.end(), int64_t{1}));
  EXPECT_NEAR(hh.r(), exact.L2(), 0.2 * exact.L2());
}

TEST(RobustHeavyHitters, RejectsDeletions) {
  RobustHeavyHitters hh(RobustHHParams{}, SeedTree(0));
  EXPECT_THROW(hh.Process({1, -1}), std::invalid_argument);
}

}  // namespace
}  // namespace robust_streaming
