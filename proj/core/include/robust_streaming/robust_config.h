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


#ifndef ROBUST_STREAMING_ROBUST_CONFIG_H_
#define ROBUST_STREAMING_ROBUST_CONFIG_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "robust_streaming/algorithm.h"
#include "robust_streaming/game.h"
#include "robust_streaming/hashing.h"
#include "robust_streaming/sketch.h"
#include "robust_streaming/strong_track.h"
#include "robust_streaming/trials.h"

namespace robust_streaming {

// Schema error; what() starts with the offending field path, e.g. "$.eps".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct WrapperConfig {
  // f0 | f2 | fp | entropy | heavy-hitters
  std::string problem = "f0";
  // static | switching | paths | shield | robust-hh
  std::string wrapper = "switching";
  // Static sketch inside the wrapper; empty picks the problem's default.
  // f0-fast | kmv | ams | p-stable | count-sketch | renyi-entropy | exact
  std::string sketch;
  int64_t n = 4096;
  int64_t m = 20000;
  int64_t M = 20000;
  double eps = 0.1;
  double delta = 0.05;
  double p = 1.0;
  double alpha = 1.0;
  uint64_t seed = 1;
  // plain | cyclic (switching only)
  std::string mode = "plain";
  // Overrides the flip bound used as the wrapper budget.
  std::optional<int64_t> lambda;
  // Defaults to bounded-deletion when alpha > 1, else insertion-only.
  std::optional<StreamModel> model_override;

  StreamModel model() const;
  StreamConfig stream() const;
  QuerySpec query() const;
};

struct ExperimentConfig {
  WrapperConfig wrapper;
  int64_t trials = 1;
  int workers = 1;
  // scripted | replay | ams-attack
  std::string adversary = "scripted";
  // uniform | zipf | single-heavy | bounded-deletion | flip-budget: the
  // scripted stream, or the replay adversary's fresh source.
  std::string stream = "uniform";
  double zipf_s = 1.2;
  double heavy_mass = 0.5;
  int64_t ams_rows = 64;
  double ams_c = 8.0;
  int64_t ams_budget = 3200;
  int64_t max_consecutive_replays = 1;
  bool stop_on_failure = false;
};

WrapperConfig ParseWrapperConfig(const std::string& json_text);
ExperimentConfig ParseExperimentConfig(const std::string& json_text);

// Failure-probability-parameterized builder for the static sketch the
// wrapper config names, at accuracy `eps`.
OneShotFactory MakeOneShot(const WrapperConfig& config, double eps);

// The wrapper's flip budget: config.lambda when set, else the flip bound of
// the tracked function at `eps`.
int64_t WrapperLambda(const WrapperConfig& config, double eps);

std::unique_ptr<StreamingAlgorithm> BuildAlgorithm(const WrapperConfig& config,
                                                   const SeedTree& seeds);

GameOptions MakeGameOptions(const ExperimentConfig& config);
TrialFactory MakeTrialFactory(const ExperimentConfig& config);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_ROBUST_CONFIG_H_
