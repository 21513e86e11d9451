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

#ifndef ROBUST_STREAMING_STREAM_H_
#define ROBUST_STREAMING_STREAM_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace robust_streaming {

enum class StreamModel { kInsertionOnly, kTurnstile, kBoundedDeletion };

std::string_view ModelName(StreamModel model);
StreamModel ParseModel(std::string_view name);

struct StreamConfig {
  int64_t n = 1;
  int64_t m = 1;
  int64_t M = 1;
  StreamModel model = StreamModel::kInsertionOnly;
  // Only meaningful for kBoundedDeletion.
  double alpha = 1.0;

  // Throws std::invalid_argument on a malformed config. Returns a warning
  // string when log2(m*M) is large relative to log2(n).
  std::optional<std::string> Validate() const;
};

struct StreamUpdate {
  int64_t index = 0;
  int64_t delta = 0;

  bool operator==(const StreamUpdate&) const = default;
};

// Throws std::invalid_argument if `u` is illegal under `config` on its own
// (index range, zero delta, sign, |delta| <= 2M).
void ValidateUpdate(const StreamConfig& config, const StreamUpdate& u);

class FrequencyVector {
 public:
  explicit FrequencyVector(int64_t dimension) : dimension_(dimension) {}

  int64_t dimension() const { return dimension_; }
  int64_t operator[](int64_t i) const;
  const std::unordered_map<int64_t, int64_t>& counts() const { return counts_; }
  // Number of nonzero coordinates.
  int64_t support() const { return static_cast<int64_t>(counts_.size()); }

  // Adds `delta` to coordinate `i` with no model checks. Zero entries are
  // erased so the map stays exactly the support.
  void Add(int64_t i, int64_t delta);

  bool operator==(const FrequencyVector&) const = default;

 private:
  int64_t dimension_;
  std::unordered_map<int64_t, int64_t> counts_;
};

// Returns f with f_a += delta. Throws std::invalid_argument on a model
// violation (negative delta in insertion-only) or when |f_a| would exceed M.
FrequencyVector ApplyUpdate(FrequencyVector f, const StreamUpdate& u,
                            const StreamConfig& config);
// In-place variant used by hot loops.
void ApplyUpdateInPlace(FrequencyVector& f, const StreamUpdate& u,
                        const StreamConfig& config);

enum class QueryKind { kF0, kFp, kF2, kEntropy, kHeavyHitters, kPointQuery };

std::string_view QueryKindName(QueryKind kind);
QueryKind ParseQueryKind(std::string_view name);

struct QuerySpec {
  QueryKind kind = QueryKind::kF0;
  double eps = 0.1;
  double delta = 0.05;
  double p = 1.0;
  // Coordinate for kPointQuery.
  int64_t index = 0;

  void Validate() const;
};

struct QueryResult {
  double value = 0.0;
  // Populated for kHeavyHitters, sorted ascending.
  std::vector<int64_t> indices;
};

// Brute-force oracle. Entropy is in bits, and 0 for the zero vector.
QueryResult ExactQuery(const FrequencyVector& f, const QuerySpec& q);

double ExactFp(const FrequencyVector& f, double p);
double ExactEntropy(const FrequencyVector& f);

// (1-eps)*b <= a <= (1+eps)*b. Rejects b < 0 and eps outside (0,1).
bool WithinRel(double a, double b, double eps);

// Rounds x to the nearest double with at most `bits` significant bits.
double RoundToBits(double x, int bits);
// Clamps negatives to zero and rounds to 32 significant bits.
double Publish(double estimate);

struct StreamScript {
  std::vector<StreamUpdate> updates;
  std::optional<std::string> expect;
};

// Parses `a delta` lines; `#` starts a comment. A line of the form
// `@expect <text>` is kept verbatim in `expect`.
StreamScript ParseStream(std::istream& in);
StreamScript ReadStreamFile(const std::string& path);
void WriteStream(std::ostream& out, const std::vector<StreamUpdate>& updates);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_STREAM_H_
