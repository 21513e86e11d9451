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

#ifndef ROBUST_STREAMING_ALGORITHM_H_
#define ROBUST_STREAMING_ALGORITHM_H_

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "robust_streaming/sketch.h"
#include "robust_streaming/stream.h"

namespace robust_streaming {

// The player facing the adversary: consumes one update, then publishes one
// output before the next update is accepted.
class StreamingAlgorithm {
 public:
  virtual ~StreamingAlgorithm() = default;

  virtual void Process(const StreamUpdate& u) = 0;
  // Published value, already clamped and rounded to 32 significant bits.
  virtual double Output() const = 0;
  virtual int64_t ActiveCopy() const { return -1; }
  // Set once the algorithm can no longer answer (flip budget exhausted).
  virtual bool Exhausted() const { return false; }
  // Heavy-hitter set for algorithms that publish one; sorted ascending.
  virtual const std::vector<int64_t>* HeavySet() const { return nullptr; }
  // Non-fatal conditions worth recording (clamped parameters and such).
  virtual std::vector<std::string> Warnings() const { return {}; }
};

// Publishes a static sketch's estimate directly, with no robustification.
class StaticAlgorithm : public StreamingAlgorithm {
 public:
  explicit StaticAlgorithm(std::unique_ptr<StaticSketch> sketch)
      : sketch_(std::move(sketch)) {}

  void Process(const StreamUpdate& u) override { sketch_->Update(u); }
  double Output() const override { return Publish(sketch_->Query()); }
  const StaticSketch& sketch() const { return *sketch_; }

 private:
  std::unique_ptr<StaticSketch> sketch_;
};

// Publishes log2 of an inner algorithm that tracks 2^H.
class EntropyBitsAlgorithm : public StreamingAlgorithm {
 public:
  explicit EntropyBitsAlgorithm(std::unique_ptr<StreamingAlgorithm> inner)
      : inner_(std::move(inner)) {}

  void Process(const StreamUpdate& u) override { inner_->Process(u); }
  double Output() const override {
    const double g = inner_->Output();
    return g > 1.0 ? Publish(std::log2(g)) : 0.0;
  }
  int64_t ActiveCopy() const override { return inner_->ActiveCopy(); }
  bool Exhausted() const override { return inner_->Exhausted(); }
  std::vector<std::string> Warnings() const override {
    return inner_->Warnings();
  }

 private:
  std::unique_ptr<StreamingAlgorithm> inner_;
};

}  // namespace robust_streaming

#endif  // ROBUST_STREAMING_ALGORITHM_H_
