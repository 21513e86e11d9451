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


#ifndef ROBUST_STREAMING_GAME_H_
#define ROBUST_STREAMING_GAME_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "robust_streaming/adversary.h"
#include "robust_streaming/algorithm.h"
#include "robust_streaming/stream.h"

namespace robust_streaming {

enum class GameStatus {
  kCompleted,
  kWrapperExhausted,
  kAttackerHalted,
  kProtocolViolation,
};
std::string_view GameStatusName(GameStatus status);

enum class RoundStatus { kOk, kFail, kExhausted, kViolation };
std::string_view RoundStatusName(RoundStatus status);
RoundStatus ParseRoundStatus(std::string_view name);

enum class JudgeMode {
  // WithinRel(estimate, exact, tol).
  kRelative,
  // Fails when estimate < tol * exact.
  kBelow,
  // |estimate - exact| <= tol.
  kAdditive,
  // Published set S must contain every i with |f_i| >= tol ||f||_2 and no i
  // with |f_i| <= (tol/2) ||f||_2.
  kHeavyHitters,
};
std::string_view JudgeModeName(JudgeMode mode);

struct Judge {
  JudgeMode mode = JudgeMode::kRelative;
  double tol = 0.1;
};

struct GameOptions {
  StreamConfig stream;
  // What the exact oracle computes; kHeavyHitters and kF2 both report F2.
  QuerySpec query;
  Judge judge;
  // End the game at the first failed round (recorded as attacker-halted).
  bool stop_on_failure = false;
};

struct RoundRecord {
  int64_t t = 0;
  StreamUpdate update;
  double estimate = 0.0;
  double exact = 0.0;
  double rel_err = 0.0;
  int64_t active_copy = -1;
  RoundStatus status = RoundStatus::kOk;

  bool operator==(const RoundRecord&) const = default;
};

struct GameTranscript {
  double initial_output = 0.0;
  std::vector<RoundRecord> rounds;
  GameStatus status = GameStatus::kCompleted;
  std::string diagnostic;

  // True iff every recorded round is ok.
  bool every_step_ok() const;
  std::optional<int64_t> first_failure() const;
  double max_rel_err() const;
  std::vector<double> outputs() const;
};

// |estimate - exact| / exact; 0 when both are 0, +inf when only exact is.
double RelativeError(double estimate, double exact);

// Runs rounds until m updates, adversary halt, exhaustion, or a protocol
// violation. The adversary sees published outputs only.
GameTranscript PlayGame(StreamingAlgorithm& algorithm, Adversary& adversary,
                        const GameOptions& options);

// Header: t,update_a,update_delta,estimate,exact,rel_err,active_copy,status.
// Reals are written with 17 significant digits so they parse back exactly.
void WriteTraceCsv(std::ostream& out, const std::vector<RoundRecord>& rounds);
std::vector<RoundRecord> ReadTraceCsv(std::istream& in);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_GAME_H_
