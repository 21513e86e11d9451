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

#ifndef ROBUST_STREAMING_FLIPNUM_H_
#define ROBUST_STREAMING_FLIPNUM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace robust_streaming {

struct FlipReport {
  double epsilon = 0.0;
  int64_t exact = 0;
  std::optional<int64_t> analytic_bound;
  // Indices i_1 < ... < i_k of a longest chain.
  std::vector<int64_t> witness;

  std::string ToJson() const;
};

// Length of the longest index chain whose consecutive values violate
// WithinRel(y_prev, y_cur, eps). Runs in O(m log m). Throws on an empty
// sequence, negative or non-finite entries, or eps outside (0,1).
FlipReport FlipNumber(std::span<const double> values, double eps);

// True iff every consecutive pair of `chain` violates the eps containment.
bool VerifyWitness(std::span<const double> values,
                   std::span<const int64_t> chain, double eps);

// 1 + number of positions where the value changes.
int64_t ZeroFlipNumber(std::span<const double> values);

// w_0 = v_0; w_i = w_{i-1} while WithinRel(w_{i-1}, v_i, eps/2), else v_i.
std::vector<double> HoldRound(std::span<const double> values, double eps);

// ceil(ln(T^2) / ln(1/(1-eps))) + 2.
int64_t FlipBoundMonotone(double T, double eps);
// ceil(max(p,1) ln(M^2 n^2) / ln(1/(1-eps))) + 2; for p = 0 also the
// minimum with ceil(ln(m^2) / ln(1/(1-eps))) + 2.
int64_t FlipBoundFp(int64_t n, int64_t m, int64_t M, double p, double eps);

struct RenyiParameters {
  double nu = 0.0;
  double beta = 0.0;
  double tau = 0.0;
};
// nu = eps / (4 log2 n log2 m), beta = 1 + nu / (16 log2(1/nu)),
// tau = eps (beta - 1) / beta.
RenyiParameters EntropyRenyiParameters(int64_t n, int64_t m, double eps);
// 2 ceil(ln(M n) / ln(1 + tau/4)) + 2.
int64_t FlipBoundEntropy(int64_t n, int64_t m, int64_t M, double eps);

// ceil(ln((M n)^p n^p) / ln(1 + eps^p / alpha)) + 2.
int64_t FlipBoundBoundedDeletion(int64_t n, int64_t M, double p, double alpha,
                                 double eps);

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_FLIPNUM_H_
