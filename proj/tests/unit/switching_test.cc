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
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "robust_streaming/ams.h"
#include "robust_streaming/exact_sketch.h"
#include "robust_streaming/flipnum.h"
#include "robust_streaming/generators.h"
#include "robust_streaming/switching.h"

namespace robust_streaming {
namespace {

SketchFactory ExactFactory(QueryKind kind, double p = 1.0) {
  return [kind, p](uint64_t) { return std::make_unique<ExactSketch>(kind, p); };
}

// Counts total inserted mass; F0 on a stream of distinct insertions.
class MassCounter : public StaticSketch {
 public:
  void Update(const StreamUpdate& u) override { mass_ += u.delta; }
  double Query() const override { return static_cast<double>(mass_); }
  void Restart(uint64_t) override { mass_ = 0; }
  SketchType type() const override { return SketchType::kExact; }
  std::string_view name() const override { return "mass"; }
  std::vector<uint8_t> Serialize() const override { return {}; }

 private:
  int64_t mass_ = 0;
};

std::vector<StreamUpdate> Turnstile(uint64_t seed, int64_t n, int64_t m) {
  SplitMix64 rng(seed);
  std::vector<StreamUpdate> s;
  for (int64_t t = 0; t < m; ++t) {
    const int64_t i = 1 + static_cast<int64_t>(rng.Below(n));
    s.push_back({i, (rng.Uniform01() < 0.7) ? 1 : -1});
  }
  return s;
}

TEST(CyclicCopies, Formula) {
  EXPECT_EQ(CyclicCopies(0.1, 1.0),
            static_cast<int64_t>(std::ceil(
                std::log(1000.0) / std::log(1.05 * (1 - 0.0125) / 1.0125))) + 1);
  EXPECT_GE(CyclicCopies(0.9, 1.0), 9);
  EXPECT_GT(CyclicCopies(0.1, 2.0), CyclicCopies(0.1, 1.0));
  EXPECT_THROW(CyclicCopies(0.0, 1.0), std::invalid_argument);
}

TEST(SketchSwitcher, ExactStubFollowsHoldRound) {
  for (double eps : {0.1, 0.3}) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const auto stream = Turnstile(seed, 50, 400);
      SwitchConfig config;
      config.eps = eps;
      config.copies = 1000;
      SketchSwitcher sw(config, ExactFactory(QueryKind::kF2), SeedTree(seed));
      ExactSketch exact(QueryKind::kF2);
      std::vector<double> truth = {0.0};
      std::vector<double> out = {sw.Output()};
      for (const auto& u : stream) {
        sw.Process(u);
        exact.Update(u);
        truth.push_back(exact.Query());
        out.push_back(sw.Output());
      }
      EXPECT_EQ(out, HoldRound(truth, eps));
      EXPECT_LE(sw.switches(), FlipNumber(truth, eps / 8).exact);
    }
  }
}

TEST(SketchSwitcher, LazyMatchesEager) {
  const auto stream = Turnstile(3, 30, 2000);
  SwitchConfig config;
  config.eps = 0.2;
  config.copies = 60;
  const SketchFactory ams = [](uint64_t seed) {
    return std::make_unique<AmsSketch>(50, seed);
  };
  SketchSwitcher eager(config, ams, SeedTree(9));
  config.materialization = Materialization::kLazy;
  SketchSwitcher lazy(config, ams, SeedTree(9));
  for (const auto& u : stream) {
    eager.Process(u);
    lazy.Process(u);
    ASSERT_EQ(eager.Output(), lazy.Output());
    ASSERT_EQ(eager.ActiveCopy(), lazy.ActiveCopy());
    ASSERT_EQ(eager.Exhausted(), lazy.Exhausted());
  }
  EXPECT_LE(lazy.materialized_copies(), 1);
  EXPECT_EQ(eager.materialized_copies(), 60);
}

TEST(SketchSwitcher, ConstantStreamLocksOutput) {
  SwitchConfig config;
  config.eps = 0.1;
  config.copies = 4;
  config.initial_output = 0.0;
  SketchSwitcher sw(config, ExactFactory(QueryKind::kF0), SeedTree(1));
  for (int t = 0; t < 1000; ++t) {
    sw.Process({7, 1});
    ASSERT_EQ(sw.Output(), 1.0);
  }
  EXPECT_EQ(sw.switches(), 1);
  EXPECT_EQ(sw.ActiveCopy(), 1);
}

TEST(SketchSwitcher, CopiesAreNotReadBeforeActivation) {
  SwitchConfig config;
  config.eps = 0.2;
  config.copies = 40;
  SketchSwitcher sw(config,
                    [](uint64_t seed) { return std::make_unique<AmsSketch>(20, seed); },
                    SeedTree(5));
  for (const auto& u : InsertionStream(ItemDistribution::Uniform(100), 3000, 3000, 5)) {
    sw.Process(u);
  }
  EXPECT_EQ(sw.hygiene_violations(), 0);
  for (int64_t j = 0; j < config.copies; ++j) {
    if (sw.first_query_step()[j] >= 0) {
      EXPECT_GE(sw.first_query_step()[j], sw.activation_step()[j]);
    }
  }
}

TEST(SketchSwitcher, ExhaustsWhenCopiesRunOut) {
  SwitchConfig config;
  config.eps = 0.1;
  config.copies = 3;
  SketchSwitcher sw(config, ExactFactory(QueryKind::kF0), SeedTree(2));
  for (int64_t i = 1; i <= 100; ++i) sw.Process({i, 1});
  EXPECT_TRUE(sw.Exhausted());
  EXPECT_EQ(sw.switches(), 3);
}

TEST(SketchSwitcher, RejectsLazyCyclic) {
  SwitchConfig config;
  config.mode = SwitchMode::kCyclic;
  config.materialization = Materialization::kLazy;
  EXPECT_THROW(SketchSwitcher(config, ExactFactory(QueryKind::kF0), SeedTree(0)),
               std::invalid_argument);
}

TEST(SketchSwitcher, CyclicReuseIsCertifiedOnGrowingStream) {
  SwitchConfig config;
  config.eps = 0.3;
  config.mode = SwitchMode::kCyclic;
  config.copies = CyclicCopies(config.eps, 1.0);
  SketchSwitcher sw(config, [](uint64_t) { return std::make_unique<MassCounter>(); },
                    SeedTree(4));
  // Mass grows by about 1% per step, through 200 switches.
  int64_t mass = 0;
  for (int64_t i = 1; sw.switches() < 200; ++i) {
    const int64_t delta = std::max<int64_t>(1, mass / 100);
    mass += delta;
    sw.Process({i, delta});
    ASSERT_TRUE(WithinRel(sw.Output(), static_cast<double>(mass), 0.3)) << i;
  }
  EXPECT_FALSE(sw.Exhausted());
  EXPECT_GT(sw.restarts(), config.copies);
  EXPECT_GT(sw.certified_reuses(), 0);
  EXPECT_EQ(sw.uncertified_reuses(), 0);
}

TEST(SketchSwitcher, CyclicTooFewCopiesIsFlagged) {
  SwitchConfig config;
  config.eps = 0.3;
  config.mode = SwitchMode::kCyclic;
  config.copies = 2;
  SketchSwitcher sw(config, ExactFactory(QueryKind::kF0), SeedTree(4));
  for (int64_t i = 1; i <= 1000; ++i) sw.Process({i, 1});
  EXPECT_GT(sw.uncertified_reuses(), 0);
}

TEST(SketchSwitcher, IngestDoesNotQuery) {
  SwitchConfig config;
  config.copies = 2;
  SketchSwitcher sw(config, ExactFactory(QueryKind::kF0), SeedTree(0));
  for (int64_t i = 1; i <= 10; ++i) sw.Ingest({i, 1});
  EXPECT_EQ(sw.first_query_step()[0], -1);
  EXPECT_EQ(sw.Output(), 0.0);
  sw.Process({11, 1});
  EXPECT_EQ(sw.Output(), 11.0);
}

}  // namespace
}  // namespace robust_streaming
