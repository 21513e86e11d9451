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


#include <string>

#include <gtest/gtest.h>

#include "robust_streaming/robust_config.h"
#include "robust_streaming/trials.h"

namespace robust_streaming {
namespace {

std::string ErrorPath(const std::string& json) {
  try {
    ParseExperimentConfig(json);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

TEST(ParseWrapperConfig, DefaultsAndFields) {
  const auto c = ParseWrapperConfig(
      R"({"problem": "fp", "p": 1.5, "eps": 0.2, "n": 100, "m": 50, "M": 5,
          "alpha": 4, "lambda": 12})");
  EXPECT_EQ(c.problem, "fp");
  EXPECT_EQ(c.p, 1.5);
  EXPECT_EQ(c.model(), StreamModel::kBoundedDeletion);
  EXPECT_EQ(c.stream().alpha, 4.0);
  EXPECT_EQ(c.lambda, 12);
  EXPECT_EQ(WrapperLambda(c, 0.2), 12);
  EXPECT_EQ(ParseWrapperConfig("{}").model(), StreamModel::kInsertionOnly);
}

TEST(ParseExperimentConfig, ReportsFieldPaths) {
  EXPECT_EQ(ErrorPath(R"({"eps": 1.5})"), "$.eps");
  EXPECT_EQ(ErrorPath(R"({"eps": "x"})"), "$.eps");
  EXPECT_EQ(ErrorPath(R"({"bogus": 1})"), "$.bogus");
  EXPECT_EQ(ErrorPath(R"({"adversary": "nobody"})"), "$.adversary");
  EXPECT_EQ(ErrorPath(R"({"trials": -1})"), "$.trials");
  EXPECT_EQ(ErrorPath(R"({"wrapper": "shield", "problem": "f2"})"), "$.problem");
  EXPECT_EQ(ErrorPath(R"({"problem": "entropy", "mode": "cyclic"})"), "$.mode");
  EXPECT_EQ(ErrorPath(R"({"adversary": "ams-attack"})"), "$.adversary");
  EXPECT_EQ(ErrorPath("[1]"), "$");
  EXPECT_EQ(ErrorPath("{"), "$");
}

TEST(BuildAlgorithm, EveryWrapperBuilds) {
  for (const char* json :
       {R"({"wrapper": "static"})", R"({"wrapper": "switching", "n": 1024, "m": 500})",
        R"({"wrapper": "switching", "mode": "cyclic", "m": 500})",
        R"({"wrapper": "paths", "problem": "fp", "model": "turnstile", "lambda": 20, "m": 500})",
        R"({"wrapper": "shield", "m": 500})",
        R"({"wrapper": "robust-hh", "problem": "heavy-hitters", "m": 500})",
        R"({"wrapper": "switching", "problem": "entropy", "n": 256, "m": 200, "eps": 0.3})"}) {
    SCOPED_TRACE(json);
    const auto c = ParseWrapperConfig(json);
    auto alg = BuildAlgorithm(c, SeedTree(1));
    ASSERT_NE(alg, nullptr);
    alg->Process({1, 1});
    EXPECT_GE(alg->Output(), 0.0);
  }
}

TEST(MakeTrialFactory, RunsEndToEnd) {
  const auto c = ParseExperimentConfig(
      R"({"wrapper": "switching", "n": 1024, "m": 300, "M": 300, "eps": 0.2,
          "trials": 2, "adversary": "replay", "stream": "uniform"})");
  TrialOptions o;
  o.trials = c.trials;
  o.game = MakeGameOptions(c);
  const auto s = RunTrials(MakeTrialFactory(c), o);
  EXPECT_EQ(s.statistics.trials, 2);
  EXPECT_EQ(s.protocol_violations, 0);
}

}  // namespace
}  // namespace robust_streaming
