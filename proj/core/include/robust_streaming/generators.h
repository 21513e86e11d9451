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


#ifndef ROBUST_STREAMING_GENERATORS_H_
#define ROBUST_STREAMING_GENERATORS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "robust_streaming/hashing.h"
#include "robust_streaming/stream.h"

namespace robust_streaming {

// A distribution over identities 1..n sampled by inverse CDF.
class ItemDistribution {
 public:
  static ItemDistribution Uniform(int64_t n);
  // P(i) proportional to i^-s.
  static ItemDistribution Zipf(int64_t n, double s);
  // Identity 1 with probability `heavy_mass`, otherwise uniform on 2..n.
  static ItemDistribution SingleHeavy(int64_t n, double heavy_mass);

  int64_t Sample(SplitMix64& rng) const;
  double Probability(int64_t i) const;
  int64_t n() const { return static_cast<int64_t>(cdf_.size()); }

 private:
  explicit ItemDistribution(std::vector<double> weights);

  std::vector<double> cdf_;  // normalized, cdf_.back() == 1
};

// m unit insertions drawn from `dist`, resampling any identity already at
// M. Throws if m > n * M.
std::vector<StreamUpdate> InsertionStream(const ItemDistribution& dist,
                                          int64_t m, int64_t M, uint64_t seed);

// m unit updates over [1, n]: an insertion phase of m/2 updates, then
// deletions mixed with insertions. Every prefix keeps f >= 0, |f_i| <= M and
// ||f||_p^p >= ||h||_p^p / alpha, where h is the absolute-value stream.
std::vector<StreamUpdate> BoundedDeletionStream(int64_t n, int64_t m,
                                                int64_t M, double p,
                                                double alpha, uint64_t seed);

struct FlipBudgetParams {
  int64_t n = 16;
  int64_t m = 200;
  int64_t M = 256;
  double p = 1.0;
  // The Fp trace of every prefix has flip number at most lambda at eps.
  double eps = 0.025;
  int64_t lambda = 20;
  // Size of the opening insertion on identity 1.
  int64_t initial_mass = 64;
};

// Turnstile stream of +-1 updates (after the opening insertion) whose Fp
// trace stays within a flip budget.
std::vector<StreamUpdate> FlipBudgetStream(const FlipBudgetParams& params,
                                           uint64_t seed);

// ||f^(t)||_p^p for t = 1..m, or F0 when p = 0.
std::vector<double> FpTrace(std::span<const StreamUpdate> updates, double p);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_GENERATORS_H_
