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

#ifndef ROBUST_STREAMING_ENTROPY_H_
#define ROBUST_STREAMING_ENTROPY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "robust_streaming/pstable.h"
#include "robust_streaming/sketch.h"

namespace robust_streaming {

// Renyi entropy in bits, H_beta = log2(F_beta / F_1^beta) / (1 - beta),
// from F_1 = ||x||_1 and F_beta = ||x||_beta^beta. Requires beta in (1, 1.5)
// and positive inputs. Evaluated as log1p of the relative gap so beta - 1
// near 1e-6 does not cancel.
double EntropyEstimate(double f1, double f_beta, double beta);

// Exact H_beta of a count vector, in bits.
double ExactRenyiEntropy(std::span<const double> counts, double beta);

struct EntropySketchParams {
  int64_t n = 256;
  int64_t m = 10'000;
  // Additive accuracy in bits.
  double eps = 0.1;
  double delta = 0.05;
  double c_k = 4.0;
  // Row cap for the F_beta sketch; required and used counts are both kept.
  int max_rows = 1 << 14;
};

// Static additive-eps entropy estimator: exact ||f||_1 counter plus a
// p-stable sketch at p = beta, with beta taken from EntropyRenyiParameters.
// Query() returns 2^H so wrappers can track it multiplicatively.
class EntropySketch : public StaticSketch {
 public:
  EntropySketch(const EntropySketchParams& params, uint64_t seed);

  void Update(const StreamUpdate& u) override;
  double Query() const override;
  void Restart(uint64_t seed) override;
  SketchType type() const override { return SketchType::kEntropy; }
  std::string_view name() const override { return "renyi-entropy"; }
  std::vector<uint8_t> Serialize() const override;

  // H estimate in bits, clamped to [0, log2 n].
  double EntropyBits() const;
  double beta() const { return beta_; }
  // Rows needed for relative error eps (beta - 1) ln 2 / 2 on F_beta.
  double rows_required() const { return rows_required_; }
  int rows_used() const { return sketch_.rows(); }

 private:
  static PStableParams InnerParams(const EntropySketchParams& params,
                                   double beta, double* rows_required);

  EntropySketchParams params_;
  double beta_;
  double rows_required_;
  PStableSketch sketch_;
  int64_t l1_ = 0;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_ENTROPY_H_
