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

#include "robust_streaming/entropy.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robust_streaming/flipnum.h"
#include "robust_streaming/serialize.h"

namespace robust_streaming {

double EntropyEstimate(double f1, double f_beta, double beta) {
  if (!(beta > 1.0 && beta < 1.5)) {
    throw std::invalid_argument("EntropyEstimate: beta in (1, 1.5)");
  }
  if (!(f1 > 0.0) || !(f_beta > 0.0)) {
    throw std::invalid_argument("EntropyEstimate: norms must be positive");
  }
  // ln F_beta - beta ln F_1 = ln(F_beta / F_1) - (beta - 1) ln F_1.
  const double gap = std::log1p((f_beta - f1) / f1) - (beta - 1.0) * std::log(f1);
  return gap / ((1.0 - beta) * std::numbers::ln2);
}

double ExactRenyiEntropy(std::span<const double> counts, double beta) {
  double f1 = 0.0;
  for (double c : counts) f1 += std::abs(c);
  if (f1 == 0.0) return 0.0;
  // Sum of q_i^beta with q_i = |c_i| / f1, as 1 + sum q_i (q_i^(beta-1) - 1)
  // to keep precision when beta is close to 1.
  double excess = 0.0;
  for (double c : counts) {
    const double q = std::abs(c) / f1;
    if (q > 0.0) excess += q * std::expm1((beta - 1.0) * std::log(q));
  }
  return std::log1p(excess) / ((1.0 - beta) * std::numbers::ln2);
}

PStableParams EntropySketch::InnerParams(const EntropySketchParams& params,
                                         double beta, double* rows_required) {
  const double rel = params.eps * (beta - 1.0) * std::numbers::ln2 / 2.0;
  const double log_term = std::log(2.0 / params.delta);
  *rows_required = params.c_k * log_term / (rel * rel);
  PStableParams inner;
  inner.p = beta;
  inner.delta = params.delta;
  inner.c_k = params.c_k;
  inner.eps = std::min(0.99, rel);
  if (*rows_required > params.max_rows) {
    inner.eps = std::min(0.99, std::sqrt(params.c_k * log_term / params.max_rows));
  }
  return inner;
}

EntropySketch::EntropySketch(const EntropySketchParams& params, uint64_t seed)
    : params_(params),
      beta_(EntropyRenyiParameters(params.n, params.m, params.eps).beta),
      rows_required_(0.0),
      sketch_(InnerParams(params, beta_, &rows_required_), seed) {}

void EntropySketch::Update(const StreamUpdate& u) {
  if (u.delta < 0) throw std::invalid_argument("EntropySketch: insertion-only");
  l1_ += u.delta;
  sketch_.Update(u);
}

double EntropySketch::EntropyBits() const {
  if (l1_ == 0) return 0.0;
  const double f_beta = sketch_.Query();
  const double upper = std::log2(static_cast<double>(params_.n));
  if (!(f_beta > 0.0)) return upper;
  const double h = EntropyEstimate(static_cast<double>(l1_), f_beta, beta_);
  if (std::isnan(h)) return 0.0;
  return std::clamp(h, 0.0, upper);
}

double EntropySketch::Query() const { return std::exp2(EntropyBits()); }

void EntropySketch::Restart(uint64_t seed) {
  sketch_.Restart(seed);
  l1_ = 0;
}

std::vector<uint8_t> EntropySketch::Serialize() const {
  ByteWriter w(type());
  w.F64(beta_);
  w.I64(l1_);
  for (uint8_t b : sketch_.Serialize()) w.U8(b);
  return w.Take();
}

}  // namespace robust_streaming
