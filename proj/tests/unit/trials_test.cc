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


#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <gtest/gtest.h>

#include "robust_streaming/adversary.h"
#include "robust_streaming/f0_fast.h"
#include "robust_streaming/generators.h"
#include "robust_streaming/trials.h"

namespace robust_streaming {
namespace {

TrialFactory F0Factory() {
  return [](int64_t, const SeedTree& seeds) {
    F0FastParams p;
    p.n = 4096;
    p.eps = 0.2;
    p.c_b = 1.0;
    TrialSetup s;
    s.algorithm = std::make_unique<StaticAlgorithm>(
        std::make_unique<F0FastSketch>(p, seeds.Child("alg").seed()));
    s.adversary = std::make_unique<ScriptedAdversary>(InsertionStream(
        ItemDistribution::Uniform(4096), 1500, 1500, seeds.Child("adv").seed()));
    return s;
  };
}

TrialOptions Options(int64_t trials) {
  TrialOptions o;
  o.trials = trials;
  o.master_seed = 77;
  o.game.stream = {.n = 4096, .m = 1500, .M = 1500};
  o.game.judge = {JudgeMode::kRelative, 0.2};
  return o;
}

std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rs_trials_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(NearestRankQuantile, Basics) {
  EXPECT_EQ(NearestRankQuantile({3, 1, 2}, 0.5), 2);
  EXPECT_EQ(NearestRankQuantile({3, 1, 2}, 1.0), 3);
  EXPECT_EQ(NearestRankQuantile({5, 1, 4, 2, 3, 6, 7, 8, 9, 10}, 0.9), 9);
  EXPECT_EQ(NearestRankQuantile({4}, 0.0), 4);
}

TEST(RunTrials, SameSeedsGiveIdenticalTranscripts) {
  auto o = Options(4);
  o.keep_transcripts = true;
  const auto a = RunTrials(F0Factory(), o);
  o.workers = 3;
  const auto b = RunTrials(F0Factory(), o);
  ASSERT_EQ(a.transcripts.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    std::stringstream x;
    std::stringstream y;
    WriteTraceCsv(x, a.transcripts[i].rounds);
    WriteTraceCsv(y, b.transcripts[i].rounds);
    EXPECT_EQ(x.str(), y.str());
  }
  EXPECT_EQ(a.statistics, b.statistics);
}

TEST(RunTrials, SingleTrialSummaryMatchesTranscript) {
  auto o = Options(1);
  o.keep_transcripts = true;
  const auto s = RunTrials(F0Factory(), o);
  const auto& t = s.transcripts[0];
  EXPECT_EQ(s.statistics.trials, 1);
  EXPECT_EQ(s.statistics.successes, t.every_step_ok() ? 1 : 0);
  EXPECT_EQ(s.statistics.max_rel_err[0], t.max_rel_err());
  EXPECT_EQ(s.statistics.max_rel_err_max, t.max_rel_err());
  EXPECT_EQ(s.statistics.first_failure[0], t.first_failure());
  EXPECT_EQ(s.statistics.rounds[0], static_cast<int64_t>(t.rounds.size()));
}

TEST(RunTrials, DoublingKeepsPrefix) {
  const auto a = RunTrials(F0Factory(), Options(3));
  const auto b = RunTrials(F0Factory(), Options(6));
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.results[i].seed, b.results[i].seed);
    EXPECT_EQ(a.results[i].max_rel_err, b.results[i].max_rel_err);
    EXPECT_EQ(a.results[i].first_failure, b.results[i].first_failure);
  }
}

TEST(RunTrials, CsvAndJsonReproduceStatistics) {
  const auto dir = TempDir("roundtrip");
  auto o = Options(5);
  o.out_dir = dir.string();
  o.config_json = R"({"note": "x"})";
  const auto s = RunTrials(F0Factory(), o);
  EXPECT_EQ(StatisticsFromTraceDir(dir.string(), 5), s.statistics);
  std::ifstream in(dir / "summary.json");
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(StatisticsFromSummaryJson(text.str()), s.statistics);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace robust_streaming
