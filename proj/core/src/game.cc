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


#include "robust_streaming/game.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "robust_streaming/exact_tracker.h"

namespace robust_streaming {

std::string_view GameStatusName(GameStatus status) {
  switch (status) {
    case GameStatus::kCompleted:
      return "completed";
    case GameStatus::kWrapperExhausted:
      return "wrapper-exhausted";
    case GameStatus::kAttackerHalted:
      return "attacker-halted";
    case GameStatus::kProtocolViolation:
      return "protocol-violation";
  }
  return "unknown";
}

std::string_view RoundStatusName(RoundStatus status) {
  switch (status) {
    case RoundStatus::kOk:
      return "ok";
    case RoundStatus::kFail:
      return "fail";
    case RoundStatus::kExhausted:
      return "exhausted";
    case RoundStatus::kViolation:
      return "violation";
  }
  return "unknown";
}

RoundStatus ParseRoundStatus(std::string_view name) {
  if (name == "ok") return RoundStatus::kOk;
  if (name == "fail") return RoundStatus::kFail;
  if (name == "exhausted") return RoundStatus::kExhausted;
  if (name == "violation") return RoundStatus::kViolation;
  throw std::invalid_argument("unknown round status: " + std::string(name));
}

std::string_view JudgeModeName(JudgeMode mode) {
  switch (mode) {
    case JudgeMode::kRelative:
      return "relative";
    case JudgeMode::kBelow:
      return "below";
    case JudgeMode::kAdditive:
      return "additive";
    case JudgeMode::kHeavyHitters:
      return "heavy-hitters";
  }
  return "unknown";
}

double RelativeError(double estimate, double exact) {
  if (exact == 0.0) {
    return estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(estimate - exact) / std::abs(exact);
}

bool GameTranscript::every_step_ok() const {
  return std::all_of(rounds.begin(), rounds.end(), [](const RoundRecord& r) {
    return r.status == RoundStatus::kOk;
  });
}

std::optional<int64_t> GameTranscript::first_failure() const {
  for (const RoundRecord& r : rounds) {
    if (r.status != RoundStatus::kOk) return r.t;
  }
  return std::nullopt;
}

double GameTranscript::max_rel_err() const {
  double worst = 0.0;
  for (const RoundRecord& r : rounds) worst = std::max(worst, r.rel_err);
  return worst;
}

std::vector<double> GameTranscript::outputs() const {
  std::vector<double> out;
  out.reserve(rounds.size());
  for (const RoundRecord& r : rounds) out.push_back(r.estimate);
  return out;
}

namespace {

double ExactValue(const ExactTracker& exact, QueryKind kind) {
  switch (kind) {
    case QueryKind::kF0:
      return static_cast<double>(exact.F0());
    case QueryKind::kF2:
    case QueryKind::kHeavyHitters:
      return static_cast<double>(exact.F2());
    case QueryKind::kFp:
      return exact.Fp();
    case QueryKind::kEntropy:
      return exact.Entropy();
    case QueryKind::kPointQuery:
      break;
  }
  throw std::invalid_argument("PlayGame: unsupported query kind");
}

bool HeavyContainmentHolds(const ExactTracker& exact,
                           const std::vector<int64_t>& published, double eps) {
  const double l2 = exact.L2();
  for (int64_t i : exact.AtLeast(eps * l2)) {
    if (!std::binary_search(published.begin(), published.end(), i)) {
      return false;
    }
  }
  const FrequencyVector& f = exact.frequencies();
  for (int64_t i : published) {
    if (static_cast<double>(std::llabs(f[i])) <= eps / 2 * l2) return false;
  }
  return true;
}

}  // namespace

GameTranscript PlayGame(StreamingAlgorithm& algorithm, Adversary& adversary,
                        const GameOptions& options) {
  options.stream.Validate();
  ExactTracker exact(options.stream, options.query.p);
  std::vector<StreamUpdate> updates;
  std::vector<double> outputs{algorithm.Output()};
  std::vector<std::vector<int64_t>> heavy_sets;
  const bool publishes_sets = algorithm.HeavySet() != nullptr;
  if (publishes_sets) heavy_sets.push_back(*algorithm.HeavySet());
  if (options.judge.mode == JudgeMode::kHeavyHitters && !publishes_sets) {
    throw std::invalid_argument("PlayGame: algorithm publishes no heavy set");
  }

  GameTranscript transcript;
  transcript.initial_output = outputs.front();
  transcript.rounds.reserve(options.stream.m);
  for (int64_t t = 1; t <= options.stream.m; ++t) {
    const TranscriptView view(&updates, &outputs,
                              publishes_sets ? &heavy_sets : nullptr);
    const std::optional<StreamUpdate> next = adversary.Next(view);
    if (!next) {
      transcript.status = GameStatus::kAttackerHalted;
      return transcript;
    }
    RoundRecord record;
    record.t = t;
    record.update = *next;
    try {
      exact.Apply(*next);
    } catch (const std::invalid_argument& e) {
      record.estimate = outputs.back();
      record.exact = ExactValue(exact, options.query.kind);
      record.rel_err = RelativeError(record.estimate, record.exact);
      record.status = RoundStatus::kViolation;
      transcript.rounds.push_back(record);
      transcript.status = GameStatus::kProtocolViolation;
      transcript.diagnostic = e.what();
      return transcript;
    }
    algorithm.Process(*next);
    updates.push_back(*next);
    record.estimate = algorithm.Output();
    record.exact = ExactValue(exact, options.query.kind);
    record.rel_err = RelativeError(record.estimate, record.exact);
    record.active_copy = algorithm.ActiveCopy();
    outputs.push_back(record.estimate);
    if (publishes_sets) heavy_sets.push_back(*algorithm.HeavySet());

    if (algorithm.Exhausted()) {
      record.status = RoundStatus::kExhausted;
      transcript.rounds.push_back(record);
      transcript.status = GameStatus::kWrapperExhausted;
      transcript.diagnostic = "flip budget exhausted";
      return transcript;
    }
    bool ok = true;
    switch (options.judge.mode) {
      case JudgeMode::kRelative:
        ok = WithinRel(record.estimate, record.exact, options.judge.tol);
        break;
      case JudgeMode::kBelow:
        ok = !(record.estimate < options.judge.tol * record.exact);
        break;
      case JudgeMode::kAdditive:
        ok = std::abs(record.estimate - record.exact) <= options.judge.tol;
        break;
      case JudgeMode::kHeavyHitters:
        ok = HeavyContainmentHolds(exact, heavy_sets.back(), options.judge.tol);
        break;
    }
    record.status = ok ? RoundStatus::kOk : RoundStatus::kFail;
    transcript.rounds.push_back(record);
    if (!ok && options.stop_on_failure) {
      transcript.status = GameStatus::kAttackerHalted;
      transcript.diagnostic = "stopped at first failure";
      return transcript;
    }
  }
  transcript.status = GameStatus::kCompleted;
  return transcript;
}

namespace {

std::string FormatReal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void WriteTraceCsv(std::ostream& out, const std::vector<RoundRecord>& rounds) {
  out << "t,update_a,update_delta,estimate,exact,rel_err,active_copy,status\n";
  for (const RoundRecord& r : rounds) {
    out << r.t << ',' << r.update.index << ',' << r.update.delta << ','
        << FormatReal(r.estimate) << ',' << FormatReal(r.exact) << ','
        << FormatReal(r.rel_err) << ',' << r.active_copy << ','
        << RoundStatusName(r.status) << '\n';
  }
}

std::vector<RoundRecord> ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "t,update_a,update_delta,estimate,exact,rel_err,active_copy,status") {
    throw std::runtime_error("trace CSV: bad header");
  }
  std::vector<RoundRecord> rounds;
  int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw std::runtime_error("trace CSV line " + std::to_string(line_no) +
                               ": expected 8 fields");
    }
    RoundRecord r;
    try {
      r.t = std::stoll(cells[0]);
      r.update.index = std::stoll(cells[1]);
      r.update.delta = std::stoll(cells[2]);
      r.estimate = std::strtod(cells[3].c_str(), nullptr);
      r.exact = std::strtod(cells[4].c_str(), nullptr);
      r.rel_err = std::strtod(cells[5].c_str(), nullptr);
      r.active_copy = std::stoll(cells[6]);
      r.status = ParseRoundStatus(cells[7]);
    } catch (const std::exception& e) {
      throw std::runtime_error("trace CSV line " + std::to_string(line_no) +
                               ": " + e.what());
    }
    rounds.push_back(r);
  }
  return rounds;
}

}  // namespace robust_streaming
