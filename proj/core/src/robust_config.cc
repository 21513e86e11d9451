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


#include "robust_streaming/robust_config.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "nlohmann/json.hpp"
#include "robust_streaming/adversary.h"
#include "robust_streaming/ams.h"
#include "robust_streaming/count_sketch.h"
#include "robust_streaming/entropy.h"
#include "robust_streaming/exact_sketch.h"
#include "robust_streaming/f0_fast.h"
#include "robust_streaming/flipnum.h"
#include "robust_streaming/generators.h"
#include "robust_streaming/kmv.h"
#include "robust_streaming/paths.h"
#include "robust_streaming/pstable.h"
#include "robust_streaming/robust_hh.h"
#include "robust_streaming/shield.h"
#include "robust_streaming/switching.h"

namespace robust_streaming {

namespace {

using nlohmann::json;

const std::set<std::string> kWrapperFields = {
    "problem", "wrapper", "sketch", "n",    "m",    "M",     "eps",
    "delta",   "p",       "alpha",  "seed", "mode", "lambda", "model"};
const std::set<std::string> kExperimentFields = {
    "trials", "workers",  "adversary", "stream",  "zipf_s",
    "heavy_mass", "ams_rows", "ams_c", "ams_budget",
    "max_consecutive_replays", "stop_on_failure"};

std::string Field(const std::string& key) { return "$." + key; }

json ParseObject(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("$", "expected an object");
  return j;
}

template <typename T>
void ReadInt(const json& j, const std::string& key, T& out, int64_t lo,
             int64_t hi) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(Field(key), "expected an integer");
  const auto x = v.get<int64_t>();
  if (x < lo || x > hi) {
    throw ConfigError(Field(key), "must be in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
  }
  out = static_cast<T>(x);
}

void ReadUnsigned(const json& j, const std::string& key, uint64_t& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer() ||
      (v.is_number_integer() && !v.is_number_unsigned() && v.get<int64_t>() < 0)) {
    throw ConfigError(Field(key), "expected a non-negative integer");
  }
  out = v.get<uint64_t>();
}

void ReadReal(const json& j, const std::string& key, double& out, double lo,
              double hi, bool open_lo, bool open_hi) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(Field(key), "expected a number");
  const auto x = v.get<double>();
  const bool ok = (open_lo ? x > lo : x >= lo) && (open_hi ? x < hi : x <= hi);
  if (!ok) {
    throw ConfigError(Field(key), std::string("must be in ") +
                                      (open_lo ? "(" : "[") + std::to_string(lo) +
                                      ", " + std::to_string(hi) +
                                      (open_hi ? ")" : "]"));
  }
  out = x;
}

void ReadChoice(const json& j, const std::string& key, std::string& out,
                const std::set<std::string>& choices) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(Field(key), "expected a string");
  const auto x = v.get<std::string>();
  if (!choices.contains(x)) {
    std::string list;
    for (const std::string& c : choices) list += (list.empty() ? "" : ", ") + c;
    throw ConfigError(Field(key), "unknown value '" + x + "' (one of " + list + ")");
  }
  out = x;
}

WrapperConfig WrapperFromJson(const json& j) {
  WrapperConfig c;
  ReadChoice(j, "problem", c.problem,
             {"f0", "f2", "fp", "entropy", "heavy-hitters"});
  ReadChoice(j, "wrapper", c.wrapper,
             {"static", "switching", "paths", "shield", "robust-hh"});
  if (j.contains("sketch")) {
    ReadChoice(j, "sketch", c.sketch,
               {"f0-fast", "kmv", "ams", "p-stable", "count-sketch",
                "renyi-entropy", "exact"});
  }
  constexpr int64_t kMax = int64_t{1} << 40;
  ReadInt(j, "n", c.n, 1, kMax);
  ReadInt(j, "m", c.m, 1, kMax);
  ReadInt(j, "M", c.M, 1, kMax);
  ReadReal(j, "eps", c.eps, 0.0, 1.0, true, true);
  ReadReal(j, "delta", c.delta, 0.0, 1.0, true, true);
  ReadReal(j, "p", c.p, 0.0, 2.0, false, false);
  ReadReal(j, "alpha", c.alpha, 1.0, 1e12, false, false);
  ReadUnsigned(j, "seed", c.seed);
  ReadChoice(j, "mode", c.mode, {"plain", "cyclic"});
  if (j.contains("lambda")) {
    int64_t lambda = 0;
    ReadInt(j, "lambda", lambda, 1, kMax);
    c.lambda = lambda;
  }
  if (j.contains("model")) {
    std::string model;
    ReadChoice(j, "model", model,
               {"insertion-only", "turnstile", "bounded-deletion"});
    c.model_override = ParseModel(model);
  }
  if (c.problem == "heavy-hitters" && c.wrapper != "robust-hh" &&
      c.wrapper != "static") {
    throw ConfigError("$.wrapper", "heavy-hitters runs with robust-hh");
  }
  if (c.wrapper == "robust-hh" && c.problem != "heavy-hitters") {
    throw ConfigError("$.problem", "robust-hh tracks heavy-hitters");
  }
  if (c.wrapper == "shield" && c.problem != "f0") {
    throw ConfigError("$.problem", "the shield wraps an F0 sketch");
  }
  if (c.problem == "entropy" && c.mode == "cyclic") {
    throw ConfigError("$.mode", "cyclic restarts need a monotone function");
  }
  if ((c.problem == "fp") && !(c.p > 0.0)) {
    throw ConfigError("$.p", "fp needs p in (0, 2]");
  }
  return c;
}

void RejectUnknown(const json& j, bool experiment) {
  for (const auto& [key, value] : j.items()) {
    if (kWrapperFields.contains(key)) continue;
    if (experiment && kExperimentFields.contains(key)) continue;
    throw ConfigError(Field(key), "unknown field");
  }
}

double TrackedP(const WrapperConfig& c) {
  if (c.problem == "f0") return 0.0;
  if (c.problem == "f2" || c.problem == "heavy-hitters") return 2.0;
  return c.p;
}

std::string DefaultSketch(const WrapperConfig& c) {
  if (!c.sketch.empty()) return c.sketch;
  if (c.problem == "f0") return "f0-fast";
  if (c.problem == "entropy") return "renyi-entropy";
  return "p-stable";
}

int OddRows(double rows) {
  auto r = static_cast<int>(std::ceil(rows));
  return std::max(1, r | 1);
}

}  // namespace

StreamModel WrapperConfig::model() const {
  if (model_override) return *model_override;
  return alpha > 1.0 ? StreamModel::kBoundedDeletion
                     : StreamModel::kInsertionOnly;
}

StreamConfig WrapperConfig::stream() const {
  StreamConfig s;
  s.n = n;
  s.m = m;
  s.M = M;
  s.model = model();
  s.alpha = alpha;
  return s;
}

QuerySpec WrapperConfig::query() const {
  QuerySpec q;
  q.eps = eps;
  q.delta = delta;
  q.p = TrackedP(*this);
  if (problem == "f0") {
    q.kind = QueryKind::kF0;
  } else if (problem == "f2") {
    q.kind = QueryKind::kF2;
  } else if (problem == "fp") {
    q.kind = QueryKind::kFp;
  } else if (problem == "entropy") {
    q.kind = QueryKind::kEntropy;
    q.p = 1.0;
  } else {
    q.kind = QueryKind::kHeavyHitters;
  }
  return q;
}

WrapperConfig ParseWrapperConfig(const std::string& json_text) {
  const json j = ParseObject(json_text);
  RejectUnknown(j, false);
  return WrapperFromJson(j);
}

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  const json j = ParseObject(json_text);
  RejectUnknown(j, true);
  ExperimentConfig c;
  c.wrapper = WrapperFromJson(j);
  ReadInt(j, "trials", c.trials, 0, 1'000'000);
  ReadInt(j, "workers", c.workers, 1, 256);
  ReadChoice(j, "adversary", c.adversary, {"scripted", "replay", "ams-attack"});
  ReadChoice(j, "stream", c.stream,
             {"uniform", "zipf", "single-heavy", "bounded-deletion",
              "flip-budget"});
  ReadReal(j, "zipf_s", c.zipf_s, 0.0, 10.0, false, false);
  ReadReal(j, "heavy_mass", c.heavy_mass, 0.0, 1.0, true, false);
  ReadInt(j, "ams_rows", c.ams_rows, 1, 1 << 20);
  ReadReal(j, "ams_c", c.ams_c, 0.0, 1e6, true, false);
  ReadInt(j, "ams_budget", c.ams_budget, 1, int64_t{1} << 40);
  ReadInt(j, "max_consecutive_replays", c.max_consecutive_replays, 0, 1 << 20);
  if (j.contains("stop_on_failure")) {
    if (!j.at("stop_on_failure").is_boolean()) {
      throw ConfigError("$.stop_on_failure", "expected a boolean");
    }
    c.stop_on_failure = j.at("stop_on_failure").get<bool>();
  }
  if (c.adversary == "ams-attack" && c.wrapper.problem != "f2") {
    throw ConfigError("$.adversary", "the AMS attack targets f2");
  }
  return c;
}

OneShotFactory MakeOneShot(const WrapperConfig& config, double eps) {
  const std::string sketch = DefaultSketch(config);
  const WrapperConfig c = config;
  if (sketch == "f0-fast") {
    return [c, eps](double delta, uint64_t seed) -> std::unique_ptr<StaticSketch> {
      F0FastParams params;
      params.n = c.n;
      params.eps = eps;
      params.delta = delta;
      return std::make_unique<F0FastSketch>(params, seed);
    };
  }
  if (sketch == "kmv") {
    return [eps](double delta, uint64_t seed) -> std::unique_ptr<StaticSketch> {
      const double k = std::ceil(3.0 * std::log(2.0 / delta) / (eps * eps));
      return std::make_unique<KmvSketch>(
          static_cast<int>(std::min(k, 1e8)), seed);
    };
  }
  if (sketch == "ams") {
    return [eps](double, uint64_t seed) -> std::unique_ptr<StaticSketch> {
      return std::make_unique<AmsSketch>(AmsSketch::RowsFor(eps), seed);
    };
  }
  if (sketch == "p-stable") {
    const double p = TrackedP(c);
    return [p, eps](double delta, uint64_t seed) -> std::unique_ptr<StaticSketch> {
      PStableParams params;
      params.p = p;
      params.eps = eps;
      params.delta = delta;
      return std::make_unique<PStableSketch>(params, seed);
    };
  }
  if (sketch == "count-sketch") {
    return [eps](double delta, uint64_t seed) -> std::unique_ptr<StaticSketch> {
      return std::make_unique<CountSketch>(
          OddRows(4.0 * std::log(2.0 / delta)),
          static_cast<int>(std::ceil(6.0 / (eps * eps))), seed);
    };
  }
  if (sketch == "renyi-entropy") {
    return [c, eps](double delta, uint64_t seed) -> std::unique_ptr<StaticSketch> {
      EntropySketchParams params;
      params.n = c.n;
      params.m = c.m;
      params.eps = eps;
      params.delta = delta;
      return std::make_unique<EntropySketch>(params, seed);
    };
  }
  const QuerySpec q = c.query();
  return [q](double, uint64_t) -> std::unique_ptr<StaticSketch> {
    return std::make_unique<ExactSketch>(q.kind, q.p);
  };
}

int64_t WrapperLambda(const WrapperConfig& c, double eps) {
  if (c.lambda) return *c.lambda;
  const StreamModel model = c.model();
  if (model == StreamModel::kTurnstile) {
    throw ConfigError("$.lambda", "turnstile streams need an explicit budget");
  }
  if (c.problem == "entropy") {
    if (model != StreamModel::kInsertionOnly) {
      throw ConfigError("$.lambda", "entropy bound is for insertion-only streams");
    }
    return FlipBoundEntropy(c.n, c.m, c.M, eps);
  }
  const double p = TrackedP(c);
  if (model == StreamModel::kBoundedDeletion) {
    return FlipBoundBoundedDeletion(c.n, c.M, std::max(p, 1e-9), c.alpha, eps);
  }
  return FlipBoundFp(c.n, c.m, c.M, p, eps);
}

namespace {

// Relative accuracy on g = 2^H that keeps log2 within eps/2 bits.
double EntropyRelativeEps(double eps_bits) {
  return 2.0 * (std::exp2(eps_bits / 2) - 1.0);
}

}  // namespace

std::unique_ptr<StreamingAlgorithm> BuildAlgorithm(const WrapperConfig& c,
                                                   const SeedTree& seeds) {
  const bool entropy = c.problem == "entropy";
  // Wrappers track g = 2^H for entropy; eps_g is the relative accuracy on g.
  const double eps_g = entropy ? EntropyRelativeEps(c.eps) : c.eps;
  const double eps_copy = entropy ? std::log2(1.0 + eps_g / 8) : eps_g / 8;
  std::unique_ptr<StreamingAlgorithm> alg;

  if (c.wrapper == "static") {
    alg = std::make_unique<StaticAlgorithm>(
        MakeOneShot(c, c.eps)(c.delta, seeds.seed()));
  } else if (c.wrapper == "switching") {
    SwitchConfig sc;
    sc.eps = eps_g;
    sc.initial_output = entropy ? 1.0 : 0.0;
    if (c.mode == "cyclic") {
      const double q = c.problem == "f0" ? 1.0 : TrackedP(c);
      sc.mode = SwitchMode::kCyclic;
      sc.copies = CyclicCopies(eps_g, q);
      sc.certify_exponent = q;
    } else {
      sc.mode = SwitchMode::kPlain;
      sc.materialization = Materialization::kLazy;
      sc.copies = WrapperLambda(c, entropy ? c.eps : eps_copy);
    }
    alg = std::make_unique<SketchSwitcher>(
        sc, StrongTrack(MakeOneShot(c, eps_copy), c.delta, c.m), seeds);
  } else if (c.wrapper == "paths") {
    PathsConfig pc;
    pc.eps = eps_g;
    pc.delta = c.delta;
    pc.m = c.m;
    pc.lambda = std::min(c.m, WrapperLambda(c, entropy ? c.eps : eps_copy));
    alg = std::make_unique<PathsWrapper>(pc, MakeOneShot(c, eps_copy),
                                         seeds.seed());
  } else if (c.wrapper == "shield") {
    ShieldParams sp;
    sp.m = c.m;
    sp.eps = c.eps;
    sp.delta = c.delta;
    alg = MakeShieldedF0(sp, seeds);
  } else {
    RobustHHParams hp;
    hp.n = c.n;
    hp.m = c.m;
    hp.eps = c.eps;
    hp.delta = c.delta;
    alg = std::make_unique<RobustHeavyHitters>(hp, seeds);
  }
  if (entropy) alg = std::make_unique<EntropyBitsAlgorithm>(std::move(alg));
  return alg;
}

GameOptions MakeGameOptions(const ExperimentConfig& config) {
  const WrapperConfig& c = config.wrapper;
  GameOptions g;
  g.stream = c.stream();
  g.query = c.query();
  g.stop_on_failure = config.stop_on_failure;
  g.judge.tol = c.eps;
  if (c.problem == "entropy") {
    g.judge.mode = JudgeMode::kAdditive;
  } else if (c.problem == "heavy-hitters") {
    g.judge.mode = JudgeMode::kHeavyHitters;
  } else {
    g.judge.mode = JudgeMode::kRelative;
  }
  if (config.adversary == "ams-attack") {
    g.judge = {JudgeMode::kBelow, 0.5};
    g.stream.m = config.ams_budget;
    g.stream.M = std::max(g.stream.M, config.ams_budget +
                                          static_cast<int64_t>(std::ceil(
                                              config.ams_c *
                                              std::sqrt(config.ams_rows))));
  }
  return g;
}

namespace {

ItemDistribution DistributionFor(const ExperimentConfig& config) {
  const int64_t n = config.wrapper.n;
  if (config.stream == "zipf") return ItemDistribution::Zipf(n, config.zipf_s);
  if (config.stream == "single-heavy") {
    return ItemDistribution::SingleHeavy(n, config.heavy_mass);
  }
  return ItemDistribution::Uniform(n);
}

std::vector<StreamUpdate> ScriptFor(const ExperimentConfig& config,
                                    uint64_t seed) {
  const WrapperConfig& c = config.wrapper;
  if (config.stream == "bounded-deletion") {
    return BoundedDeletionStream(c.n, c.m, c.M, std::max(TrackedP(c), 1e-9),
                                 c.alpha, seed);
  }
  if (config.stream == "flip-budget") {
    FlipBudgetParams fp;
    fp.n = c.n;
    fp.m = c.m;
    fp.M = c.M;
    fp.p = TrackedP(c);
    fp.eps = c.eps / 8;
    fp.lambda = c.lambda.value_or(20);
    fp.initial_mass = std::min<int64_t>(c.M, 64);
    return FlipBudgetStream(fp, seed);
  }
  return InsertionStream(DistributionFor(config), c.m, c.M, seed);
}

}  // namespace

TrialFactory MakeTrialFactory(const ExperimentConfig& config) {
  return [config](int64_t, const SeedTree& seeds) {
    TrialSetup setup;
    if (config.adversary == "ams-attack" && config.wrapper.wrapper == "static" &&
        DefaultSketch(config.wrapper) == "ams") {
      // The attacker is told t, so the sketch must have exactly t rows.
      setup.algorithm = std::make_unique<StaticAlgorithm>(
          std::make_unique<AmsSketch>(static_cast<int>(config.ams_rows),
                                      seeds.Child("alg").seed()));
    } else {
      setup.algorithm = BuildAlgorithm(config.wrapper, seeds.Child("alg"));
    }
    const uint64_t adv_seed = seeds.Child("adv").seed();
    const WrapperConfig& c = config.wrapper;
    if (config.adversary == "ams-attack") {
      AmsAttackConfig ac;
      ac.rows = config.ams_rows;
      ac.c = config.ams_c;
      ac.budget = config.ams_budget;
      ac.n = c.n;
      ac.seed = adv_seed;
      setup.adversary = std::make_unique<AmsAttack>(ac);
    } else if (config.adversary == "replay") {
      ReplayConfig rc;
      rc.n = c.n;
      rc.m = c.m;
      rc.seed = adv_seed;
      rc.max_consecutive_replays = config.max_consecutive_replays;
      FreshSource fresh;
      if (config.stream == "zipf" || config.stream == "single-heavy") {
        fresh = [dist = DistributionFor(config)](SplitMix64& rng) {
          return dist.Sample(rng);
        };
      } else {
        fresh = UnseenIdentities(c.n);
      }
      setup.adversary = std::make_unique<ReplayAdversary>(rc, std::move(fresh));
    } else {
      setup.adversary =
          std::make_unique<ScriptedAdversary>(ScriptFor(config, adv_seed));
    }
    return setup;
  };
}

}  // namespace robust_streaming
