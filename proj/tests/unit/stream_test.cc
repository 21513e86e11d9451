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


#include "robust_streaming/stream.h"

#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "robust_streaming/exact_tracker.h"
#include "robust_streaming/hashing.h"
#include "test_support.h"

namespace robust_streaming {
namespace {

StreamConfig Turnstile(int64_t n, int64_t M) {
  StreamConfig c;
  c.n = n;
  c.m = 1000;
  c.M = M;
  c.model = StreamModel::kTurnstile;
  return c;
}

StreamConfig Insertion(int64_t n, int64_t M) {
  StreamConfig c = Turnstile(n, M);
  c.model = StreamModel::kInsertionOnly;
  return c;
}

TEST(ApplyUpdate, SingleUpdate) {
  FrequencyVector f(10);
  f = ApplyUpdate(f, {3, 5}, Insertion(10, 100));
  EXPECT_EQ(f[3], 5);
  EXPECT_EQ(f.support(), 1);
}

TEST(ApplyUpdate, Cancellation) {
  FrequencyVector f(10);
  f = ApplyUpdate(f, {3, 5}, Turnstile(10, 100));
  f = ApplyUpdate(f, {3, -5}, Turnstile(10, 100));
  EXPECT_EQ(f[3], 0);
  EXPECT_EQ(f.support(), 0);
}

TEST(ApplyUpdate, RejectsModelViolationWithoutMutation) {
  FrequencyVector f(10);
  f = ApplyUpdate(f, {3, 1}, Insertion(10, 100));
  const FrequencyVector before = f;
  EXPECT_THROW(ApplyUpdateInPlace(f, {3, -1}, Insertion(10, 100)),
               std::invalid_argument);
  EXPECT_EQ(f, before);
}

TEST(ApplyUpdate, RejectsCoordinateBound) {
  FrequencyVector f(10);
  const StreamConfig c = Turnstile(10, 4);
  f = ApplyUpdate(f, {2, 4}, c);
  EXPECT_THROW(ApplyUpdate(f, {2, 1}, c), std::invalid_argument);
  EXPECT_THROW(ApplyUpdate(f, {11, 1}, c), std::invalid_argument);
  EXPECT_THROW(ApplyUpdate(f, {0, 1}, c), std::invalid_argument);
  EXPECT_THROW(ApplyUpdate(f, {1, 0}, c), std::invalid_argument);
}

TEST(ApplyUpdate, ReplayReproducesVector) {
  SplitMix64 rng(7);
  const StreamConfig c = Turnstile(50, 1000);
  std::vector<StreamUpdate> s;
  for (int i = 0; i < 500; ++i) {
    s.push_back({static_cast<int64_t>(rng.Below(50)) + 1,
                 rng.Coin() ? 1 : -1});
  }
  FrequencyVector a(50);
  FrequencyVector b(50);
  for (const auto& u : s) ApplyUpdateInPlace(a, u, c);
  for (const auto& u : s) b = ApplyUpdate(b, u, c);
  EXPECT_EQ(a, b);
  const auto dense = testing::DenseFrequencies(s, 50);
  for (int64_t i = 1; i <= 50; ++i) EXPECT_EQ(a[i], dense[i]);
}

FrequencyVector FromDense(const std::vector<int64_t>& values) {
  FrequencyVector f(static_cast<int64_t>(values.size()));
  for (size_t i = 0; i < values.size(); ++i) {
    f.Add(static_cast<int64_t>(i) + 1, values[i]);
  }
  return f;
}

TEST(ExactQuery, SmallCases) {
  QuerySpec q;
  q.kind = QueryKind::kF0;
  EXPECT_EQ(ExactQuery(FromDense({2, 0, 7}), q).value, 2.0);
  q.kind = QueryKind::kF2;
  EXPECT_EQ(ExactQuery(FromDense({3, 4}), q).value, 25.0);
  q.kind = QueryKind::kEntropy;
  EXPECT_DOUBLE_EQ(ExactQuery(FromDense({1, 1, 1, 1, 1, 1, 1, 1}), q).value,
                   3.0);
  EXPECT_EQ(ExactQuery(FrequencyVector(4), q).value, 0.0);
}

TEST(ExactQuery, HeavyHittersAndPointQuery) {
  QuerySpec q;
  q.kind = QueryKind::kHeavyHitters;
  q.eps = 0.5;
  const auto r = ExactQuery(FromDense({10, 1, -6, 1}), q);
  // ||f||_2 = sqrt(138) ~ 11.75; threshold ~ 5.87.
  EXPECT_EQ(r.indices, (std::vector<int64_t>{1, 3}));
  q.kind = QueryKind::kPointQuery;
  q.index = 3;
  EXPECT_EQ(ExactQuery(FromDense({10, 1, -6, 1}), q).value, -6.0);
}

TEST(ExactQuery, F0MatchesSetCountOnRandomStreams) {
  SplitMix64 rng(11);
  QuerySpec q;
  q.kind = QueryKind::kF0;
  for (int trial = 0; trial < 1000; ++trial) {
    const StreamConfig c = Turnstile(64, 1000);
    FrequencyVector f(64);
    std::vector<StreamUpdate> s;
    const int len = 1 + static_cast<int>(rng.Below(60));
    for (int i = 0; i < len; ++i) {
      s.push_back({static_cast<int64_t>(rng.Below(64)) + 1,
                   rng.Coin() ? 1 : -1});
      ApplyUpdateInPlace(f, s.back(), c);
    }
    const auto dense = testing::DenseFrequencies(s, 64);
    std::set<int64_t> support;
    for (int64_t i = 1; i <= 64; ++i) {
      if (dense[i] != 0) support.insert(i);
    }
    ASSERT_EQ(ExactQuery(f, q).value, static_cast<double>(support.size()));
  }
}

TEST(WithinRel, Examples) {
  EXPECT_TRUE(WithinRel(100, 100, 0.1));
  EXPECT_TRUE(WithinRel(109, 100, 0.1));
  EXPECT_FALSE(WithinRel(111, 100, 0.1));
  EXPECT_TRUE(WithinRel(0, 0, 0.1));
  EXPECT_TRUE(WithinRel(90, 100, 0.1));
  EXPECT_THROW(WithinRel(1, -1, 0.1), std::invalid_argument);
  EXPECT_THROW(WithinRel(1, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(WithinRel(1, 1, 1.0), std::invalid_argument);
}

TEST(WithinRel, MonotoneInEps) {
  SplitMix64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.Uniform01() * 200;
    const double b = rng.Uniform01() * 200;
    const double e1 = 0.01 + 0.9 * rng.Uniform01();
    const double e2 = e1 + (0.99 - e1) * rng.Uniform01();
    if (WithinRel(a, b, e1)) {
      ASSERT_TRUE(WithinRel(a, b, e2));
    }
  }
}

TEST(Publish, ClampsAndRounds) {
  EXPECT_EQ(Publish(-3.0), 0.0);
  EXPECT_EQ(Publish(1.5), 1.5);
  const double x = 1.0 + std::ldexp(1.0, -40);
  EXPECT_EQ(Publish(x), 1.0);
  EXPECT_EQ(RoundToBits(3.0, 1), 4.0);
  EXPECT_EQ(Publish(Publish(12345.678)), Publish(12345.678));
}

TEST(StreamFile, ParsesCommentsAndExpect) {
  std::istringstream in(
      "# header\n1 5\n  2 -3   # trailing\n@expect F0=2\n\n3 1\n");
  const StreamScript s = ParseStream(in);
  ASSERT_EQ(s.updates.size(), 3u);
  EXPECT_EQ(s.updates[1].index, 2);
  EXPECT_EQ(s.updates[1].delta, -3);
  ASSERT_TRUE(s.expect.has_value());
  EXPECT_EQ(*s.expect, "F0=2");
  std::ostringstream out;
  WriteStream(out, s.updates);
  std::istringstream back(out.str());
  const StreamScript again = ParseStream(back);
  ASSERT_EQ(again.updates.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(again.updates[i].index, s.updates[i].index);
    EXPECT_EQ(again.updates[i].delta, s.updates[i].delta);
  }
}

TEST(StreamFile, RejectsGarbage) {
  std::istringstream in("1 x\n");
  EXPECT_THROW(ParseStream(in), std::invalid_argument);
}

TEST(ExactTracker, IncrementalAggregatesMatchBruteForce) {
  SplitMix64 rng(5);
  StreamConfig c = Turnstile(40, 50);
  ExactTracker t(c, 1.5);
  FrequencyVector f(40);
  for (int step = 0; step < 3000; ++step) {
    StreamUpdate u{static_cast<int64_t>(rng.Below(40)) + 1,
                   rng.Below(3) == 0 ? -1 : 1};
    if (std::abs(f[u.index] + u.delta) > c.M) u.delta = -u.delta;
    t.Apply(u);
    ApplyUpdateInPlace(f, u, c);
    if (step % 97 != 0) continue;
    ASSERT_EQ(t.F0(), f.support());
    ASSERT_NEAR(t.Fp(), ExactFp(f, 1.5), 1e-6 * (1 + ExactFp(f, 1.5)));
    ASSERT_EQ(static_cast<double>(t.F2()), ExactFp(f, 2.0));
    ASSERT_NEAR(t.Entropy(), ExactEntropy(f), 1e-9);
    int64_t l1 = 0;
    for (const auto& [i, v] : f.counts()) l1 += std::abs(v);
    ASSERT_EQ(t.F1(), l1);
  }
}

}  // namespace
}  // namespace robust_streaming
