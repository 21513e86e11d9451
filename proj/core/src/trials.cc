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


#include "robust_streaming/trials.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nlohmann/json.hpp"

namespace robust_streaming {

namespace {

using nlohmann::json;

json RealOrNull(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double RealFromJson(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::string TracePath(const std::string& dir, int64_t i) {
  return (std::filesystem::path(dir) / ("trace_" + std::to_string(i) + ".csv"))
      .string();
}

}  // namespace

double NearestRankQuantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto n = static_cast<int64_t>(values.size());
  const auto rank = std::clamp<int64_t>(
      static_cast<int64_t>(std::ceil(q * static_cast<double>(n))), 1, n);
  return values[rank - 1];
}

TrialStatistics ComputeStatistics(
    const std::vector<std::vector<RoundRecord>>& traces) {
  TrialStatistics s;
  s.trials = static_cast<int64_t>(traces.size());
  for (const auto& rounds : traces) {
    std::optional<int64_t> first;
    double worst = 0.0;
    for (const RoundRecord& r : rounds) {
      if (!first && r.status != RoundStatus::kOk) first = r.t;
      worst = std::max(worst, r.rel_err);
    }
    if (!first) ++s.successes;
    s.first_failure.push_back(first);
    s.max_rel_err.push_back(worst);
    s.rounds.push_back(static_cast<int64_t>(rounds.size()));
  }
  s.success_rate = s.trials == 0 ? 0.0
                                 : static_cast<double>(s.successes) /
                                       static_cast<double>(s.trials);
  s.max_rel_err_p50 = NearestRankQuantile(s.max_rel_err, 0.5);
  s.max_rel_err_p90 = NearestRankQuantile(s.max_rel_err, 0.9);
  s.max_rel_err_max = NearestRankQuantile(s.max_rel_err, 1.0);
  return s;
}

namespace {

json StatisticsToJson(const TrialStatistics& s) {
  json first = json::array();
  for (const auto& f : s.first_failure) {
    first.push_back(f ? json(*f) : json(nullptr));
  }
  json errs = json::array();
  for (double e : s.max_rel_err) errs.push_back(RealOrNull(e));
  return {
      {"trials", s.trials},
      {"successes", s.successes},
      {"success_rate", s.success_rate},
      {"first_failure", first},
      {"max_rel_err", errs},
      {"rounds", s.rounds},
      {"max_rel_err_p50", RealOrNull(s.max_rel_err_p50)},
      {"max_rel_err_p90", RealOrNull(s.max_rel_err_p90)},
      {"max_rel_err_max", RealOrNull(s.max_rel_err_max)},
  };
}

}  // namespace

std::string TrialSummary::ToJson() const {
  json results_json = json::array();
  for (const TrialResult& r : results) {
    results_json.push_back({
        {"trial", r.index},
        {"seed", r.seed},
        {"status", std::string(GameStatusName(r.status))},
        {"success", r.success},
        {"diagnostic", r.diagnostic},
        {"warnings", r.warnings},
    });
  }
  json out = {
      {"master_seed", master_seed},
      {"protocol_violations", protocol_violations},
      {"statistics", StatisticsToJson(statistics)},
      {"results", results_json},
  };
  out["config"] = config_json.empty() ? json(nullptr) : json::parse(config_json);
  return out.dump(2);
}

TrialStatistics StatisticsFromSummaryJson(const std::string& json_text) {
  const json j = json::parse(json_text).at("statistics");
  TrialStatistics s;
  s.trials = j.at("trials").get<int64_t>();
  s.successes = j.at("successes").get<int64_t>();
  s.success_rate = j.at("success_rate").get<double>();
  for (const json& f : j.at("first_failure")) {
    s.first_failure.push_back(f.is_null() ? std::nullopt
                                          : std::optional(f.get<int64_t>()));
  }
  for (const json& e : j.at("max_rel_err")) s.max_rel_err.push_back(RealFromJson(e));
  s.rounds = j.at("rounds").get<std::vector<int64_t>>();
  s.max_rel_err_p50 = RealFromJson(j.at("max_rel_err_p50"));
  s.max_rel_err_p90 = RealFromJson(j.at("max_rel_err_p90"));
  s.max_rel_err_max = RealFromJson(j.at("max_rel_err_max"));
  return s;
}

TrialStatistics StatisticsFromTraceDir(const std::string& dir, int64_t trials) {
  std::vector<std::vector<RoundRecord>> traces;
  for (int64_t i = 0; i < trials; ++i) {
    std::ifstream in(TracePath(dir, i));
    if (!in) throw std::runtime_error("cannot open " + TracePath(dir, i));
    traces.push_back(ReadTraceCsv(in));
  }
  return ComputeStatistics(traces);
}

TrialSummary RunTrials(const TrialFactory& factory,
                       const TrialOptions& options) {
  if (options.trials < 0) throw std::invalid_argument("RunTrials: trials >= 0");
  if (options.out_dir) std::filesystem::create_directories(*options.out_dir);
  const SeedTree root(options.master_seed);
  std::vector<TrialResult> results(options.trials);
  std::vector<GameTranscript> transcripts(options.trials);

  auto run_one = [&](int64_t i) {
    const SeedTree seeds = root.Child("trial", i);
    TrialSetup setup = factory(i, seeds);
    const GameOptions& game = setup.options ? *setup.options : options.game;
    GameTranscript transcript =
        PlayGame(*setup.algorithm, *setup.adversary, game);
    TrialResult& r = results[i];
    r.index = i;
    r.seed = seeds.seed();
    r.status = transcript.status;
    r.first_failure = transcript.first_failure();
    r.success = transcript.every_step_ok();
    r.max_rel_err = transcript.max_rel_err();
    r.rounds = static_cast<int64_t>(transcript.rounds.size());
    r.diagnostic = transcript.diagnostic;
    r.warnings = setup.algorithm->Warnings();
    if (options.out_dir) {
      std::ofstream out(TracePath(*options.out_dir, i));
      WriteTraceCsv(out, transcript.rounds);
    }
    transcripts[i] = std::move(transcript);
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (int64_t i = 0; i < options.trials; ++i) run_one(i);
  } else {
    std::atomic<int64_t> next{0};
    std::mutex error_mu;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int64_t i = next++; i < options.trials; i = next++) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  TrialSummary summary;
  summary.master_seed = options.master_seed;
  summary.config_json = options.config_json;
  std::vector<std::vector<RoundRecord>> traces;
  traces.reserve(transcripts.size());
  for (const GameTranscript& t : transcripts) {
    traces.push_back(t.rounds);
    if (t.status == GameStatus::kProtocolViolation) ++summary.protocol_violations;
  }
  summary.statistics = ComputeStatistics(traces);
  summary.results = std::move(results);
  if (options.keep_transcripts) summary.transcripts = std::move(transcripts);
  if (options.out_dir) {
    std::ofstream out(
        (std::filesystem::path(*options.out_dir) / "summary.json").string());
    out << summary.ToJson() << '\n';
  }
  return summary;
}

}  // namespace robust_streaming
