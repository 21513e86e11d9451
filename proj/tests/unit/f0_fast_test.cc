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


#include "robust_streaming/f0_fast.h"

#include <cmath>
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>

#include "robust_streaming/hashing.h"
#include "robust_streaming/serialize.h"
#include "test_support.h"

namespace robust_streaming {
namespace {

// Small lists so the level path is reached at test scale.
F0FastParams SmallLists() {
  F0FastParams p;
  p.n = 1 << 16;
  p.eps = 0.5;
  p.delta = 0.05;
  p.c_b = 1.0;
  return p;
}

TEST(F0FastShape, FollowsFormulas) {
  F0FastParams p;
  p.n = 1 << 16;
  p.eps = 0.1;
  p.delta = 0.01;
  const F0FastShape s = ComputeF0FastShape(p);
  const double budget = std::log2(16.0) + std::log(100.0);
  EXPECT_EQ(s.B, static_cast<int64_t>(std::ceil(32 * budget / 0.01)));
  EXPECT_EQ(s.d, static_cast<int>(std::ceil(10 * budget)));
  EXPECT_EQ(s.D, static_cast<int64_t>(std::ceil(s.d / 0.1)));
  EXPECT_EQ(s.ell, 40);  // ceil(2.5 * 16)
  EXPECT_GE(s.ell, 32);
  EXPECT_LE(s.ell, 48);
}

TEST(F0Fast, ExactSmallDedups) {
  F0FastSketch s(F0FastParams{}, 1);
  EXPECT_EQ(s.Query(), 0.0);
  s.Update({1, 1});
  s.Update({1, 1});
  s.Update({2, 1});
  EXPECT_EQ(s.exact_small(), (std::vector<int64_t>{1, 2}));
  EXPECT_EQ(s.Query(), 2.0);
  s.Update({7, 3});
  EXPECT_EQ(s.Query(), 3.0);
}

TEST(F0Fast, RejectsTurnstile) {
  F0FastSketch s(F0FastParams{}, 1);
  EXPECT_THROW(s.Update({1, -1}), std::invalid_argument);
}

// Routes every identity on arrival, with no deferral.
struct EagerLevels {
  explicit EagerLevels(const F0FastSketch& s)
      : sketch(s), levels(s.shape().ell + 1), deleted(s.shape().ell + 1, false) {}
  void Add(int64_t id) {
    const int j = sketch.LevelOf(id);
    if (deleted[j]) return;
    levels[j].insert(id);
    if (static_cast<int64_t>(levels[j].size()) > sketch.shape().B) {
      levels[j].clear();
      deleted[j] = true;
    }
  }
  const F0FastSketch& sketch;
  std::vector<std::unordered_set<int64_t>> levels;
  std::vector<bool> deleted;
};

TEST(F0Fast, DeferredRoutingMatchesEagerRouting) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    F0FastSketch s(SmallLists(), seed);
    EagerLevels oracle(s);
    SplitMix64 rng(seed + 100);
    for (int i = 0; i < 20000; ++i) {
      const int64_t id = static_cast<int64_t>(rng.Below(50000)) + 1;
      s.Update({id, 1});
      oracle.Add(id);
      if (!s.overflowed()) continue;
      if (i % 500 != 0) continue;
      for (int j = 0; j <= s.shape().ell; ++j) {
        ASSERT_EQ(s.level_deleted(j), oracle.deleted[j]);
        ASSERT_EQ(s.level_size(j), static_cast<int64_t>(oracle.levels[j].size()));
      }
    }
    ASSERT_TRUE(s.overflowed());
  }
}

TEST(F0Fast, SaturatedLevelStaysDeleted) {
  F0FastSketch s(SmallLists(), 3);
  int64_t next = 1;
  while (!s.level_deleted(0)) s.Update({next++, 1});
  EXPECT_EQ(s.level_size(0), 0);
  for (int i = 0; i < 5000; ++i) s.Update({next++, 1});
  EXPECT_TRUE(s.level_deleted(0));
  EXPECT_EQ(s.level_size(0), 0);
}

TEST(F0Fast, LevelDistributionIsGeometric) {
  F0FastSketch s(F0FastParams{}, 17);
  std::vector<int64_t> counts(s.shape().ell + 1, 0);
  constexpr int kIds = 200000;
  for (int64_t id = 1; id <= kIds; ++id) ++counts[s.LevelOf(id)];
  for (int j = 0; j < 6; ++j) {
    const double expected = kIds * std::ldexp(1.0, -(j + 1));
    EXPECT_NEAR(counts[j], expected, 5 * std::sqrt(expected)) << "level " << j;
  }
}

TEST(F0Fast, StoredIdentitiesStayWithinSpaceBound) {
  F0FastSketch s(SmallLists(), 5);
  for (int64_t id = 1; id <= 100000; ++id) {
    s.Update({id, 1});
    if (id % 1000 == 0) {
      ASSERT_LE(s.stored_identities(), 64 * s.shape().B);
    }
  }
  F0FastParams big;
  big.n = 1 << 20;
  F0FastSketch t(big, 6);
  for (int64_t id = 1; id <= 100000; ++id) t.Update({id, 1});
  EXPECT_LE(t.stored_identities(), 64 * t.shape().B);
}

TEST(F0Fast, DuplicatesLeaveStateBitIdentical) {
  F0FastSketch s(SmallLists(), 9);
  SplitMix64 rng(9);
  std::vector<int64_t> seen;
  for (int i = 0; i < 30000; ++i) {
    const int64_t id = static_cast<int64_t>(rng.Below(1 << 30)) + 1;
    s.Update({id, 1});
    seen.push_back(id);
    if (i % 997 != 0) continue;
    const auto before = s.Serialize();
    for (int r = 0; r < 20; ++r) {
      s.Update({seen[rng.Below(seen.size())], 1 + static_cast<int64_t>(rng.Below(3))});
    }
    ASSERT_EQ(s.Serialize(), before);
  }
}

TEST(F0Fast, AccurateInExactRegime) {
  // 10^4 distinct at eps = 0.1 and delta = 0.01.
  int good = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    F0FastParams p;
    p.n = 1 << 20;
    p.eps = 0.1;
    p.delta = 0.01;
    F0FastSketch s(p, seed);
    for (int64_t id = 1; id <= 10000; ++id) s.Update({id * 7919 % 1000003, 1});
    const double q = s.Query();
    good += q >= 9000 && q <= 11000;
  }
  EXPECT_GE(good, 99);
}

TEST(F0Fast, AccurateOnLevelPath) {
  int good = 0;
  int64_t deleted_runs = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    F0FastParams p;
    p.n = 1 << 20;
    p.eps = 0.2;
    p.delta = 0.05;
    F0FastSketch s(p, 1000 + seed);
    SplitMix64 rng(seed);
    const int64_t distinct = 60000;
    for (int64_t k = 0; k < distinct; ++k) {
      s.Update({static_cast<int64_t>(Mix64(seed * 1000003 + k) >> 4), 1});
    }
    for (int j = 0; j <= s.shape().ell; ++j) deleted_runs += s.level_deleted(j);
    good += WithinRel(s.Query(), static_cast<double>(distinct), 0.2);
  }
  EXPECT_GT(deleted_runs, 0);
  EXPECT_GE(good, 95);
}

TEST(F0Fast, RestartMatchesFreshInstanceOnSuffix) {
  std::vector<double> restarted;
  std::vector<double> fresh;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    F0FastSketch a(SmallLists(), seed);
    for (int64_t id = 1; id <= 3000; ++id) a.Update({id, 1});
    a.Restart(Mix64(seed + 777));
    F0FastSketch b(SmallLists(), Mix64(seed + 555));
    for (int64_t id = 5001; id <= 15000; ++id) {
      a.Update({id, 1});
      b.Update({id, 1});
    }
    restarted.push_back(a.Query());
    fresh.push_back(b.Query());
  }
  EXPECT_GT(testing::KsTwoSamplePValue(restarted, fresh), 0.01);
}

TEST(F0Fast, SerializationHeader) {
  F0FastSketch s(F0FastParams{}, 1);
  s.Update({5, 1});
  const auto bytes = s.Serialize();
  ByteReader r(bytes, SketchType::kF0Fast);
  EXPECT_THROW(ByteReader(bytes, SketchType::kAms), std::runtime_error);
  std::vector<uint8_t> truncated(bytes.begin(), bytes.begin() + 5);
  EXPECT_THROW(ByteReader(truncated, SketchType::kF0Fast), std::runtime_error);
}

}  // namespace
}  // namespace robust_streaming
