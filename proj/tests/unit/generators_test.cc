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
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>

#include "robust_streaming/flipnum.h"
#include "robust_streaming/generators.h"
#include "test_support.h"

namespace robust_streaming {
namespace {

TEST(ItemDistribution, ZipfTopFrequency) {
  const auto dist = ItemDistribution::Zipf(4096, 1.2);
  const auto stream = InsertionStream(dist, 100000, 100000, 1);
  const auto f = testing::DenseFrequencies(stream, 4096);
  const double expected = 100000 * dist.Probability(1);
  EXPECT_NEAR(f[1], expected, 0.1 * expected);
  EXPECT_EQ(*std::max_element(f.begin(), f.end()), f[1]);
}

TEST(ItemDistribution, ProbabilitiesSumToOne) {
  for (const auto& d : {ItemDistribution::Uniform(10), ItemDistribution::Zipf(50, 0.7),
                        ItemDistribution::SingleHeavy(20, 0.4)}) {
    double total = 0;
    for (int64_t i = 1; i <= d.n(); ++i) total += d.Probability(i);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  EXPECT_NEAR(ItemDistribution::SingleHeavy(20, 0.4).Probability(1), 0.4, 1e-12);
}

TEST(InsertionStream, UniformF0NonDecreasingAndCapped) {
  const auto stream = InsertionStream(ItemDistribution::Uniform(64), 600, 10, 2);
  std::unordered_set<int64_t> distinct;
  size_t prev = 0;
  for (const auto& u : stream) {
    ASSERT_EQ(u.delta, 1);
    distinct.insert(u.index);
    ASSERT_GE(distinct.size(), prev);
    prev = distinct.size();
  }
  const auto f = testing::DenseFrequencies(stream, 64);
  EXPECT_LE(*std::max_element(f.begin(), f.end()), 10);
  EXPECT_THROW(InsertionStream(ItemDistribution::Uniform(2), 30, 10, 0),
               std::invalid_argument);
}

TEST(InsertionStream, Deterministic) {
  const auto d = ItemDistribution::Zipf(100, 1.0);
  EXPECT_EQ(InsertionStream(d, 500, 500, 7), InsertionStream(d, 500, 500, 7));
  EXPECT_NE(InsertionStream(d, 500, 500, 7), InsertionStream(d, 500, 500, 8));
}

TEST(BoundedDeletionStream, InvariantEveryPrefix) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const double alpha = 4.0;
    const double p = 1.0;
    const auto stream = BoundedDeletionStream(1024, 10000, 16, p, alpha, seed);
    ASSERT_EQ(stream.size(), 10000u);
    std::vector<int64_t> f(1025, 0);
    std::vector<int64_t> h(1025, 0);
    double fp = 0;
    double hp = 0;
    bool any_delete = false;
    for (const auto& u : stream) {
      ASSERT_EQ(std::abs(u.delta), 1);
      any_delete |= u.delta < 0;
      fp += std::abs(f[u.index] + u.delta) - std::abs(f[u.index]);
      hp += 1;
      f[u.index] += u.delta;
      h[u.index] += 1;
      ASSERT_GE(f[u.index], 0);
      ASSERT_LE(f[u.index], 16);
      ASSERT_GE(fp * alpha, hp * (1 - 1e-12));
    }
    EXPECT_TRUE(any_delete);
  }
}

TEST(FlipBudgetStream, RespectsBudget) {
  FlipBudgetParams p;
  p.n = 1024;
  p.m = 2000;
  p.eps = 0.2 / 8;
  p.lambda = 20;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const auto stream = FlipBudgetStream(p, seed);
    ASSERT_EQ(static_cast<int64_t>(stream.size()), p.m);
    EXPECT_EQ(stream[0], (StreamUpdate{1, p.initial_mass}));
    const auto trace = FpTrace(stream, p.p);
    EXPECT_LE(FlipNumber(trace, p.eps).exact, p.lambda);
    bool any_delete = false;
    for (const auto& u : stream) any_delete |= u.delta < 0;
    EXPECT_TRUE(any_delete);
  }
}

TEST(FpTrace, MatchesDirectComputation) {
  const std::vector<StreamUpdate> s = {{1, 2}, {2, 1}, {1, -2}, {3, 4}};
  EXPECT_EQ(FpTrace(s, 0.0), (std::vector<double>{1, 2, 1, 2}));
  EXPECT_EQ(FpTrace(s, 2.0), (std::vector<double>{4, 5, 1, 17}));
}

}  // namespace
}  // namespace robust_streaming
