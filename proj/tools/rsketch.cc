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


// rsketch: experiment runner and utilities for the robust streaming library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "robust_streaming/adversary.h"
#include "robust_streaming/ams.h"
#include "robust_streaming/flipnum.h"
#include "robust_streaming/game.h"
#include "robust_streaming/generators.h"
#include "robust_streaming/robust_config.h"
#include "robust_streaming/trials.h"

namespace rs = robust_streaming;
using json = nlohmann::json;

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct AmsRun {
  int64_t rows = 64;
  int64_t trials = 100;
  int64_t budget = 3200;
  double c = 8.0;
  int64_t n = 100000;
};

rs::TrialSummary RunAmsAttack(const AmsRun& run, uint64_t seed,
                              const std::optional<std::string>& out_dir) {
  rs::TrialOptions o;
  o.trials = run.trials;
  o.master_seed = seed;
  o.out_dir = out_dir;
  o.game.stream.n = run.n;
  o.game.stream.m = run.budget;
  o.game.stream.M =
      run.budget + static_cast<int64_t>(std::ceil(run.c * std::sqrt(run.rows)));
  o.game.query.kind = rs::QueryKind::kF2;
  o.game.judge = {rs::JudgeMode::kBelow, 0.5};
  o.game.stop_on_failure = true;
  json cfg = {{"rows", run.rows}, {"c", run.c}, {"budget", run.budget},
              {"n", run.n}, {"trials", run.trials}};
  o.config_json = cfg.dump();
  auto factory = [run](int64_t, const rs::SeedTree& seeds) {
    rs::TrialSetup setup;
    rs::AmsAttackConfig ac;
    ac.rows = run.rows;
    ac.c = run.c;
    ac.budget = run.budget;
    ac.n = run.n;
    ac.seed = seeds.Child("adv").seed();
    setup.adversary = std::make_unique<rs::AmsAttack>(ac);
    setup.algorithm = std::make_unique<rs::StaticAlgorithm>(
        std::make_unique<rs::AmsSketch>(static_cast<int>(run.rows),
                                        seeds.Child("alg").seed()));
    return setup;
  };
  return rs::RunTrials(factory, o);
}

int64_t AttackWins(const rs::TrialSummary& s) {
  int64_t wins = 0;
  for (const auto& r : s.results) wins += r.first_failure.has_value();
  return wins;
}

int CmdRun(const std::string& config_path, uint64_t seed,
           const std::string& out_dir, int workers) {
  const std::string text = ReadFile(config_path);
  const rs::ExperimentConfig config = rs::ParseExperimentConfig(text);
  rs::TrialOptions o;
  o.trials = config.trials;
  o.workers = workers > 0 ? workers : config.workers;
  o.master_seed = seed;
  o.game = rs::MakeGameOptions(config);
  o.out_dir = out_dir;
  o.config_json = json::parse(text).dump();
  const rs::TrialSummary summary = rs::RunTrials(rs::MakeTrialFactory(config), o);
  std::cout << summary.ToJson() << "\n";
  return summary.protocol_violations == 0 ? 0 : 1;
}

int CmdAttackAms(const AmsRun& run, uint64_t seed,
                 const std::optional<std::string>& out_dir) {
  const rs::TrialSummary summary = RunAmsAttack(run, seed, out_dir);
  json j = json::parse(summary.ToJson());
  j["attack_wins"] = AttackWins(summary);
  std::cout << j.dump(2) << "\n";
  return summary.protocol_violations == 0 ? 0 : 1;
}

int CmdFlipnum(const std::string& input, double eps) {
  std::istringstream in(ReadFile(input));
  std::vector<double> values;
  for (double v; in >> v;) values.push_back(v);
  std::cout << rs::FlipNumber(values, eps).ToJson() << "\n";
  return 0;
}

int CmdCalibrateAms(const std::vector<double>& sweep, AmsRun run,
                    bool quadratic_budget, uint64_t seed) {
  json rows = json::array();
  bool clean = true;
  for (double c : sweep) {
    run.c = c;
    if (quadratic_budget) {
      run.budget = static_cast<int64_t>(std::ceil(2 * c * c * run.rows));
    }
    const auto start = std::chrono::steady_clock::now();
    const rs::TrialSummary s = RunAmsAttack(run, seed, std::nullopt);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    clean = clean && s.protocol_violations == 0;
    rows.push_back({{"c", c},
                    {"budget", run.budget},
                    {"wins", AttackWins(s)},
                    {"trials", run.trials},
                    {"seconds", secs}});
  }
  std::cout << json{{"rows", run.rows}, {"seed", seed}, {"sweep", rows}}.dump(2)
            << "\n";
  return clean ? 0 : 1;
}

int CmdBench(const std::string& sketch, int64_t updates, int64_t n, double eps,
             uint64_t seed) {
  rs::WrapperConfig wc;
  wc.sketch = sketch;
  wc.wrapper = "static";
  wc.n = n;
  wc.m = updates;
  wc.eps = eps;
  if (sketch == "f0-fast" || sketch == "kmv") {
    wc.problem = "f0";
  } else if (sketch == "renyi-entropy") {
    wc.problem = "entropy";
  } else if (sketch == "p-stable") {
    wc.problem = "fp";
  } else {
    wc.problem = "f2";
  }
  auto s = rs::MakeOneShot(wc, eps)(wc.delta, seed);
  const auto stream = rs::InsertionStream(rs::ItemDistribution::Uniform(n),
                                          updates, updates, seed ^ 0x5bd1e995);
  const auto start = std::chrono::steady_clock::now();
  for (const auto& u : stream) s->Update(u);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::cout << json{{"sketch", sketch},
                    {"updates", updates},
                    {"n", n},
                    {"eps", eps},
                    {"seconds", secs},
                    {"ns_per_update", 1e9 * secs / updates},
                    {"final_estimate", s->Query()}}
                   .dump(2)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarially robust streaming sketches"};
  app.require_subcommand(1);
  uint64_t seed = 1;
  app.add_option("--seed", seed, "Master seed")->capture_default_str();

  std::string config_path;
  std::string out_dir = ".";
  int workers = 0;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "Experiment JSON")->required();
  run->add_option("--out", out_dir, "Directory for traces and summary.json")
      ->capture_default_str();
  run->add_option("--workers", workers, "Override the config's worker count");

  AmsRun ams;
  std::string ams_out;
  auto* attack = app.add_subcommand("attack-ams", "Adaptive attack on AMS");
  attack->add_option("--rows", ams.rows, "Sketch rows t")->capture_default_str();
  attack->add_option("--trials", ams.trials)->capture_default_str();
  attack->add_option("--budget", ams.budget, "Update budget")->capture_default_str();
  attack->add_option("--c", ams.c, "Planted weight constant C")->capture_default_str();
  attack->add_option("--n", ams.n, "Universe size")->capture_default_str();
  attack->add_option("--out", ams_out, "Directory for traces and summary.json");

  std::string input;
  double eps = 0.1;
  auto* flip = app.add_subcommand("flipnum", "Exact flip number of a sequence");
  flip->add_option("--input", input, "Whitespace-separated values")->required();
  flip->add_option("--eps", eps)->required();

  std::vector<double> sweep = {4, 8, 16, 32};
  bool quadratic = false;
  AmsRun cal;
  auto* calibrate = app.add_subcommand("calibrate-ams", "Sweep C for the AMS attack");
  calibrate->add_option("--sweep-c", sweep, "Values of C")
      ->delimiter(',')
      ->capture_default_str();
  calibrate->add_option("--rows", cal.rows)->capture_default_str();
  calibrate->add_option("--trials", cal.trials)->capture_default_str();
  calibrate->add_option("--budget", cal.budget)->capture_default_str();
  calibrate->add_flag("--quadratic-budget", quadratic, "Use budget 2 C^2 t");

  std::string sketch = "count-sketch";
  int64_t updates = 100000;
  int64_t bench_n = 1 << 16;
  double bench_eps = 0.1;
  auto* bench = app.add_subcommand("bench", "Time static sketch updates");
  bench->add_option("--sketch", sketch)
      ->check(CLI::IsMember({"f0-fast", "kmv", "ams", "p-stable", "count-sketch",
                             "renyi-entropy", "exact"}))
      ->capture_default_str();
  bench->add_option("--updates", updates)->capture_default_str();
  bench->add_option("--n", bench_n)->capture_default_str();
  bench->add_option("--eps", bench_eps)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return CmdRun(config_path, seed, out_dir, workers);
    if (*attack) {
      return CmdAttackAms(ams, seed, ams_out.empty()
                                         ? std::nullopt
                                         : std::optional<std::string>(ams_out));
    }
    if (*flip) return CmdFlipnum(input, eps);
    if (*calibrate) return CmdCalibrateAms(sweep, cal, quadratic, seed);
    if (*bench) return CmdBench(sketch, updates, bench_n, bench_eps, seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rsketch: %s\n", e.what());
    return 2;
  }
  return 0;
}
