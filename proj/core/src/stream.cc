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

#include "robust_streaming/stream.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace robust_streaming {

namespace {

constexpr int64_t kMaxUniverse = int64_t{1} << 40;

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string_view ModelName(StreamModel model) {
  switch (model) {
    case StreamModel::kInsertionOnly:
      return "insertion-only";
    case StreamModel::kTurnstile:
      return "turnstile";
    case StreamModel::kBoundedDeletion:
      return "alpha-bounded-deletion";
  }
  return "unknown";
}

StreamModel ParseModel(std::string_view name) {
  if (name == "insertion-only") return StreamModel::kInsertionOnly;
  if (name == "turnstile") return StreamModel::kTurnstile;
  if (name == "alpha-bounded-deletion" || name == "bounded-deletion") {
    return StreamModel::kBoundedDeletion;
  }
  throw std::invalid_argument("unknown stream model: " + std::string(name));
}

std::optional<std::string> StreamConfig::Validate() const {
  if (n < 1 || n > kMaxUniverse) {
    throw std::invalid_argument("n must be in [1, 2^40]");
  }
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (model == StreamModel::kBoundedDeletion && !(alpha >= 1.0)) {
    throw std::invalid_argument("alpha must be >= 1");
  }
  const double log_n = std::max(1.0, std::log2(static_cast<double>(n)));
  const double log_mm =
      std::log2(static_cast<double>(m)) + std::log2(static_cast<double>(M));
  if (log_mm > 4.0 * log_n) {
    std::ostringstream msg;
    msg << "log2(m*M) = " << log_mm << " is large relative to log2(n) = "
        << log_n;
    return msg.str();
  }
  return std::nullopt;
}

void ValidateUpdate(const StreamConfig& config, const StreamUpdate& u) {
  if (u.index < 1 || u.index > config.n) {
    throw std::invalid_argument("update index " + std::to_string(u.index) +
                                " outside [1, " + std::to_string(config.n) +
                                "]");
  }
  if (u.delta == 0) throw std::invalid_argument("update delta is zero");
  if (config.model == StreamModel::kInsertionOnly && u.delta < 0) {
    throw std::invalid_argument("negative delta in insertion-only stream");
  }
  if (std::abs(u.delta) > 2 * config.M) {
    throw std::invalid_argument("|delta| exceeds 2M");
  }
}

int64_t FrequencyVector::operator[](int64_t i) const {
  auto it = counts_.find(i);
  return it == counts_.end() ? 0 : it->second;
}

void FrequencyVector::Add(int64_t i, int64_t delta) {
  if (delta == 0) return;
  auto [it, inserted] = counts_.try_emplace(i, delta);
  if (!inserted) {
    it->second += delta;
    if (it->second == 0) counts_.erase(it);
  }
}

void ApplyUpdateInPlace(FrequencyVector& f, const StreamUpdate& u,
                        const StreamConfig& config) {
  ValidateUpdate(config, u);
  const int64_t next = f[u.index] + u.delta;
  if (std::abs(next) > config.M) {
    throw std::invalid_argument("coordinate " + std::to_string(u.index) +
                                " would reach " + std::to_string(next) +
                                ", exceeding M = " + std::to_string(config.M));
  }
  f.Add(u.index, u.delta);
}

FrequencyVector ApplyUpdate(FrequencyVector f, const StreamUpdate& u,
                            const StreamConfig& config) {
  ApplyUpdateInPlace(f, u, config);
  return f;
}

std::string_view QueryKindName(QueryKind kind) {
  switch (kind) {
    case QueryKind::kF0:
      return "F0";
    case QueryKind::kFp:
      return "Fp";
    case QueryKind::kF2:
      return "F2";
    case QueryKind::kEntropy:
      return "entropy";
    case QueryKind::kHeavyHitters:
      return "heavy-hitters";
    case QueryKind::kPointQuery:
      return "point-query";
  }
  return "unknown";
}

QueryKind ParseQueryKind(std::string_view name) {
  if (name == "F0") return QueryKind::kF0;
  if (name == "Fp") return QueryKind::kFp;
  if (name == "F2") return QueryKind::kF2;
  if (name == "entropy") return QueryKind::kEntropy;
  if (name == "heavy-hitters") return QueryKind::kHeavyHitters;
  if (name == "point-query") return QueryKind::kPointQuery;
  throw std::invalid_argument("unknown query kind: " + std::string(name));
}

void QuerySpec::Validate() const {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must be in (0,1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0,1)");
  }
  if (kind == QueryKind::kFp && !(p > 0.0 && p <= 2.0)) {
    throw std::invalid_argument("p must be in (0,2]");
  }
}

double ExactFp(const FrequencyVector& f, double p) {
  if (p == 0.0) return static_cast<double>(f.support());
  double sum = 0.0;
  for (const auto& [i, c] : f.counts()) {
    const double a = std::abs(static_cast<double>(c));
    sum += p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p));
  }
  return sum;
}

double ExactEntropy(const FrequencyVector& f) {
  const double l1 = ExactFp(f, 1.0);
  if (l1 == 0.0) return 0.0;
  double h = 0.0;
  for (const auto& [i, c] : f.counts()) {
    const double q = std::abs(static_cast<double>(c)) / l1;
    h -= q * std::log2(q);
  }
  return std::max(0.0, h);
}

QueryResult ExactQuery(const FrequencyVector& f, const QuerySpec& q) {
  QueryResult result;
  switch (q.kind) {
    case QueryKind::kF0:
      result.value = static_cast<double>(f.support());
      break;
    case QueryKind::kFp:
      result.value = ExactFp(f, q.p);
      break;
    case QueryKind::kF2:
      result.value = ExactFp(f, 2.0);
      break;
    case QueryKind::kEntropy:
      result.value = ExactEntropy(f);
      break;
    case QueryKind::kHeavyHitters: {
      const double l2 = std::sqrt(ExactFp(f, 2.0));
      result.value = l2;
      for (const auto& [i, c] : f.counts()) {
        if (std::abs(static_cast<double>(c)) >= q.eps * l2) {
          result.indices.push_back(i);
        }
      }
      std::sort(result.indices.begin(), result.indices.end());
      break;
    }
    case QueryKind::kPointQuery:
      result.value = static_cast<double>(f[q.index]);
      break;
  }
  return result;
}

bool WithinRel(double a, double b, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("WithinRel: eps must be in (0,1)");
  }
  if (b < 0.0) throw std::invalid_argument("WithinRel: b must be >= 0");
  return (1.0 - eps) * b <= a && a <= (1.0 + eps) * b;
}

double RoundToBits(double x, int bits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // |mant| in [0.5, 1)
  const double scaled = std::nearbyint(std::ldexp(mant, bits));
  return std::ldexp(scaled, exp - bits);
}

double Publish(double estimate) {
  if (!(estimate > 0.0)) return 0.0;
  return RoundToBits(estimate, 32);
}

StreamScript ParseStream(std::istream& in) {
  StreamScript script;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = Trim(line);
    if (body.rfind("@expect", 0) == 0) {
      script.expect = Trim(std::string_view(body).substr(7));
      continue;
    }
    if (auto hash = body.find('#'); hash != std::string::npos) {
      body = Trim(std::string_view(body).substr(0, hash));
    }
    if (body.empty()) continue;
    std::istringstream fields(body);
    StreamUpdate u;
    std::string extra;
    if (!(fields >> u.index >> u.delta) || (fields >> extra)) {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": expected `a delta`");
    }
    script.updates.push_back(u);
  }
  return script;
}

StreamScript ReadStreamFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stream file: " + path);
  return ParseStream(in);
}

void WriteStream(std::ostream& out, const std::vector<StreamUpdate>& updates) {
  for (const StreamUpdate& u : updates) out << u.index << ' ' << u.delta << '\n';
}

}  // namespace robust_streaming
