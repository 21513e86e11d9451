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

#include "robust_streaming/flipnum.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "robust_streaming/stream.h"

namespace robust_streaming {

namespace {

void CheckEps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must be in (0,1)");
  }
}

// (chain length, end index); ties resolved toward the earlier index.
using Best = std::pair<int64_t, int64_t>;

bool Better(const Best& a, const Best& b) {
  return a.first > b.first || (a.first == b.first && a.second < b.second);
}

class MaxFenwick {
 public:
  explicit MaxFenwick(size_t size) : tree_(size + 1, Best{0, -1}) {}

  void Raise(size_t pos, Best value) {
    for (size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) {
      if (Better(value, tree_[i])) tree_[i] = value;
    }
  }
  // Best over positions [0, count).
  Best Prefix(size_t count) const {
    Best best{0, -1};
    for (size_t i = count; i > 0; i -= i & (~i + 1)) {
      if (Better(tree_[i], best)) best = tree_[i];
    }
    return best;
  }

 private:
  std::vector<Best> tree_;
};

double LogInvOneMinus(double eps) { return -std::log1p(-eps); }

// Absorbs last-ulp noise so exact integer ratios (e.g. ln 2^20 / ln 2) do
// not round up.
int64_t CeilPlusTwo(double x) {
  return static_cast<int64_t>(std::ceil(std::max(0.0, x) * (1.0 - 1e-12))) + 2;
}

}  // namespace

std::string FlipReport::ToJson() const {
  std::ostringstream out;
  out.precision(17);
  out << "{\"epsilon\": " << epsilon << ", \"exact\": " << exact
      << ", \"analytic_bound\": ";
  if (analytic_bound) {
    out << *analytic_bound;
  } else {
    out << "null";
  }
  out << ", \"witness\": [";
  for (size_t i = 0; i < witness.size(); ++i) {
    out << (i ? ", " : "") << witness[i];
  }
  out << "]}";
  return out.str();
}

FlipReport FlipNumber(std::span<const double> values, double eps) {
  CheckEps(eps);
  if (values.empty()) throw std::invalid_argument("FlipNumber: empty sequence");
  for (double y : values) {
    if (!(y >= 0.0) || !std::isfinite(y)) {
      throw std::invalid_argument("FlipNumber: entries must be finite and >= 0");
    }
  }

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const size_t k = sorted.size();

  // below[pos] indexes values ascending, above[pos] descending.
  MaxFenwick below(k);
  MaxFenwick above(k);
  const size_t m = values.size();
  std::vector<int64_t> length(m);
  std::vector<int64_t> parent(m, -1);
  Best overall{0, -1};

  for (size_t j = 0; j < m; ++j) {
    const double y = values[j];
    // Same arithmetic as WithinRel(y_i, y, eps).
    const double lo = (1.0 - eps) * y;
    const double hi = (1.0 + eps) * y;
    const size_t n_below = std::lower_bound(sorted.begin(), sorted.end(), lo) -
                           sorted.begin();
    const size_t first_above =
        std::upper_bound(sorted.begin(), sorted.end(), hi) - sorted.begin();
    Best best = below.Prefix(n_below);
    const Best from_above = above.Prefix(k - first_above);
    if (Better(from_above, best)) best = from_above;

    length[j] = best.first + 1;
    parent[j] = best.second;
    const Best here{length[j], static_cast<int64_t>(j)};
    const size_t pos =
        std::lower_bound(sorted.begin(), sorted.end(), y) - sorted.begin();
    below.Raise(pos, here);
    above.Raise(k - 1 - pos, here);
    if (Better(here, overall)) overall = here;
  }

  FlipReport report;
  report.epsilon = eps;
  report.exact = overall.first;
  for (int64_t i = overall.second; i >= 0; i = parent[i]) {
    report.witness.push_back(i);
  }
  std::reverse(report.witness.begin(), report.witness.end());
  return report;
}

bool VerifyWitness(std::span<const double> values,
                   std::span<const int64_t> chain, double eps) {
  for (size_t j = 1; j < chain.size(); ++j) {
    if (chain[j] <= chain[j - 1]) return false;
    if (chain[j] >= static_cast<int64_t>(values.size())) return false;
    if (WithinRel(values[chain[j - 1]], values[chain[j]], eps)) return false;
  }
  return true;
}

int64_t ZeroFlipNumber(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("ZeroFlipNumber: empty sequence");
  }
  int64_t changes = 0;
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] != values[i - 1]) ++changes;
  }
  return changes + 1;
}

std::vector<double> HoldRound(std::span<const double> values, double eps) {
  CheckEps(eps);
  std::vector<double> w;
  w.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || !WithinRel(w.back(), values[i], eps / 2)) {
      w.push_back(values[i]);
    } else {
      w.push_back(w.back());
    }
  }
  return w;
}

int64_t FlipBoundMonotone(double T, double eps) {
  CheckEps(eps);
  if (!(T >= 1.0)) throw std::invalid_argument("FlipBoundMonotone: T >= 1");
  return CeilPlusTwo(2.0 * std::log(T) / LogInvOneMinus(eps));
}

int64_t FlipBoundFp(int64_t n, int64_t m, int64_t M, double p, double eps) {
  CheckEps(eps);
  if (n < 1 || m < 1 || M < 1 || p < 0.0) {
    throw std::invalid_argument("FlipBoundFp: parameters must be positive");
  }
  const double log_t = 2.0 * (std::log(static_cast<double>(M)) +
                              std::log(static_cast<double>(n)));
  int64_t bound = CeilPlusTwo(std::max(p, 1.0) * log_t / LogInvOneMinus(eps));
  if (p == 0.0) {
    bound = std::min(bound, CeilPlusTwo(2.0 * std::log(static_cast<double>(m)) /
                                        LogInvOneMinus(eps)));
  }
  return bound;
}

RenyiParameters EntropyRenyiParameters(int64_t n, int64_t m, double eps) {
  CheckEps(eps);
  if (n < 2 || m < 2) {
    throw std::invalid_argument("EntropyRenyiParameters: n, m >= 2");
  }
  RenyiParameters r;
  r.nu = eps / (4.0 * std::log2(static_cast<double>(n)) *
                std::log2(static_cast<double>(m)));
  r.beta = 1.0 + r.nu / (16.0 * std::log2(1.0 / r.nu));
  r.tau = eps * (r.beta - 1.0) / r.beta;
  return r;
}

int64_t FlipBoundEntropy(int64_t n, int64_t m, int64_t M, double eps) {
  const RenyiParameters r = EntropyRenyiParameters(n, m, eps);
  const double log_mn =
      std::log(static_cast<double>(M)) + std::log(static_cast<double>(n));
  return 2 * (CeilPlusTwo(log_mn / std::log1p(r.tau / 4.0)) - 2) + 2;
}

int64_t FlipBoundBoundedDeletion(int64_t n, int64_t M, double p, double alpha,
                                 double eps) {
  CheckEps(eps);
  if (!(p >= 1.0 && p <= 2.0)) {
    throw std::invalid_argument("FlipBoundBoundedDeletion: p in [1,2]");
  }
  if (!(alpha >= 1.0)) {
    throw std::invalid_argument("FlipBoundBoundedDeletion: alpha >= 1");
  }
  const double log_mn =
      std::log(static_cast<double>(M)) + std::log(static_cast<double>(n));
  const double numerator = p * log_mn + p * std::log(static_cast<double>(n));
  return CeilPlusTwo(numerator / std::log1p(std::pow(eps, p) / alpha));
}

}  // namespace robust_streaming
