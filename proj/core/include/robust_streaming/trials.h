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


#ifndef ROBUST_STREAMING_TRIALS_H_
#define ROBUST_STREAMING_TRIALS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "robust_streaming/adversary.h"
#include "robust_streaming/algorithm.h"
#include "robust_streaming/game.h"
#include "robust_streaming/hashing.h"

namespace robust_streaming {

struct TrialSetup {
  std::unique_ptr<StreamingAlgorithm> algorithm;
  std::unique_ptr<Adversary> adversary;
  // Per-trial override, e.g. a stream length that depends on the script.
  std::optional<GameOptions> options;
};

// Builds trial `index` from its seed subtree; algorithm randomness should
// come from seeds.Child("alg") and adversary randomness from
// seeds.Child("adv"). Called concurrently when workers > 1.
using TrialFactory =
    std::function<TrialSetup(int64_t index, const SeedTree& seeds)>;

struct TrialOptions {
  int64_t trials = 1;
  uint64_t master_seed = 0;
  int workers = 1;
  GameOptions game;
  // Writes trace_<i>.csv and summary.json here when set.
  std::optional<std::string> out_dir;
  // Echoed into summary.json verbatim; must be JSON text or empty.
  std::string config_json;
  // Keep the transcripts in the returned summary.
  bool keep_transcripts = false;
};

struct TrialResult {
  int64_t index = 0;
  uint64_t seed = 0;
  GameStatus status = GameStatus::kCompleted;
  std::optional<int64_t> first_failure;
  bool success = false;
  double max_rel_err = 0.0;
  int64_t rounds = 0;
  std::string diagnostic;
  std::vector<std::string> warnings;
};

// The part of a summary that is a function of the traces alone.
struct TrialStatistics {
  int64_t trials = 0;
  int64_t successes = 0;
  double success_rate = 0.0;
  std::vector<std::optional<int64_t>> first_failure;
  std::vector<double> max_rel_err;
  std::vector<int64_t> rounds;
  // Nearest-rank quantiles of the per-trial max relative error.
  double max_rel_err_p50 = 0.0;
  double max_rel_err_p90 = 0.0;
  double max_rel_err_max = 0.0;

  bool operator==(const TrialStatistics&) const = default;
};

struct TrialSummary {
  TrialStatistics statistics;
  std::vector<TrialResult> results;
  std::vector<GameTranscript> transcripts;
  int64_t protocol_violations = 0;
  uint64_t master_seed = 0;
  std::string config_json;

  std::string ToJson() const;
};

// Nearest-rank quantile q in [0, 1] of `values` (copied and sorted).
double NearestRankQuantile(std::vector<double> values, double q);

TrialStatistics ComputeStatistics(
    const std::vector<std::vector<RoundRecord>>& traces);

TrialSummary RunTrials(const TrialFactory& factory,
                       const TrialOptions& options);

// Reads trace_0.csv .. trace_{trials-1}.csv from `dir`.
TrialStatistics StatisticsFromTraceDir(const std::string& dir, int64_t trials);
// Parses the "statistics" object of a summary.json.
TrialStatistics StatisticsFromSummaryJson(const std::string& json_text);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_TRIALS_H_
