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


#include "robust_streaming/generators.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "robust_streaming/flipnum.h"

namespace robust_streaming {

namespace {

double PowAbs(int64_t x, double p) {
  return x == 0 ? 0.0 : std::pow(static_cast<double>(std::llabs(x)), p);
}

}  // namespace

ItemDistribution::ItemDistribution(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("ItemDistribution: n >= 1");
  double total = 0.0;
  cdf_.reserve(weights.size());
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("ItemDistribution: weight < 0");
    total += w;
    cdf_.push_back(total);
  }
  if (!(total > 0.0)) throw std::invalid_argument("ItemDistribution: no mass");
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

ItemDistribution ItemDistribution::Uniform(int64_t n) {
  return ItemDistribution(std::vector<double>(std::max<int64_t>(n, 0), 1.0));
}

ItemDistribution ItemDistribution::Zipf(int64_t n, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("Zipf: s >= 0");
  std::vector<double> w(std::max<int64_t>(n, 0));
  for (int64_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -s);
  return ItemDistribution(std::move(w));
}

ItemDistribution ItemDistribution::SingleHeavy(int64_t n, double heavy_mass) {
  if (n < 2 || !(heavy_mass > 0.0 && heavy_mass <= 1.0)) {
    throw std::invalid_argument("SingleHeavy: n >= 2, mass in (0,1]");
  }
  std::vector<double> w(n, (1.0 - heavy_mass) / static_cast<double>(n - 1));
  w[0] = heavy_mass;
  return ItemDistribution(std::move(w));
}

int64_t ItemDistribution::Sample(SplitMix64& rng) const {
  const double u = rng.Uniform01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto k = std::min<int64_t>(it - cdf_.begin(), n() - 1);
  return k + 1;
}

double ItemDistribution::Probability(int64_t i) const {
  if (i < 1 || i > n()) return 0.0;
  return cdf_[i - 1] - (i >= 2 ? cdf_[i - 2] : 0.0);
}

std::vector<StreamUpdate> InsertionStream(const ItemDistribution& dist,
                                          int64_t m, int64_t M, uint64_t seed) {
  if (m < 0 || M < 1 || m > dist.n() * M) {
    throw std::invalid_argument("InsertionStream: need 0 <= m <= n * M");
  }
  SplitMix64 rng(seed);
  std::unordered_map<int64_t, int64_t> f;
  std::vector<int64_t> open;  // identities below the cap, for fallback
  std::vector<StreamUpdate> out;
  out.reserve(m);
  for (int64_t t = 0; t < m; ++t) {
    int64_t i = dist.Sample(rng);
    for (int tries = 0; f[i] >= M; ++tries) {
      if (tries < 64) {
        i = dist.Sample(rng);
        continue;
      }
      if (open.empty()) {
        for (int64_t j = 1; j <= dist.n(); ++j) {
          if (f[j] < M) open.push_back(j);
        }
      }
      const size_t k = rng.Below(open.size());
      i = open[k];
      open[k] = open.back();
      open.pop_back();
    }
    ++f[i];
    out.push_back({i, 1});
  }
  return out;
}

std::vector<StreamUpdate> BoundedDeletionStream(int64_t n, int64_t m,
                                                int64_t M, double p,
                                                double alpha, uint64_t seed) {
  if (n < 1 || m < 0 || M < 1 || !(p > 0.0) || !(alpha >= 1.0)) {
    throw std::invalid_argument("BoundedDeletionStream: bad parameters");
  }
  SplitMix64 rng(seed);
  std::vector<int64_t> f(n + 1, 0);
  std::vector<int64_t> h(n + 1, 0);
  double fp = 0.0;
  double hp = 0.0;
  std::vector<StreamUpdate> out;
  out.reserve(m);

  auto try_apply = [&](int64_t i, int64_t delta) {
    const int64_t next = f[i] + delta;
    if (next < 0 || next > M) return false;
    const double fp_next = fp - PowAbs(f[i], p) + PowAbs(next, p);
    const double hp_next = hp - PowAbs(h[i], p) + PowAbs(h[i] + 1, p);
    if (fp_next * alpha < hp_next * (1.0 - 1e-12)) return false;
    f[i] = next;
    ++h[i];
    fp = fp_next;
    hp = hp_next;
    out.push_back({i, delta});
    return true;
  };

  const int64_t insert_phase = m / 2;
  for (int64_t t = 0; t < m; ++t) {
    const bool deleting = t >= insert_phase && rng.Coin();
    bool done = false;
    for (int tries = 0; tries < 32 && !done; ++tries) {
      const int64_t i = static_cast<int64_t>(rng.Below(n)) + 1;
      done = try_apply(i, deleting ? -1 : 1);
    }
    // An untouched or never-deleted coordinate always accepts an insertion.
    for (int64_t i = 1; i <= n && !done; ++i) {
      if (f[i] == h[i]) done = try_apply(i, 1);
    }
    if (!done) break;
  }
  if (static_cast<int64_t>(out.size()) < m) {
    throw std::runtime_error("BoundedDeletionStream: no admissible update");
  }
  return out;
}

std::vector<double> FpTrace(std::span<const StreamUpdate> updates, double p) {
  if (p < 0.0) throw std::invalid_argument("FpTrace: p >= 0");
  std::unordered_map<int64_t, int64_t> f;
  double total = 0.0;
  int64_t support = 0;
  std::vector<double> trace;
  trace.reserve(updates.size());
  for (const StreamUpdate& u : updates) {
    int64_t& x = f[u.index];
    const int64_t next = x + u.delta;
    if (p == 0.0) {
      support += (next != 0) - (x != 0);
    } else {
      total += PowAbs(next, p) - PowAbs(x, p);
    }
    x = next;
    trace.push_back(p == 0.0 ? static_cast<double>(support)
                             : std::max(0.0, total));
  }
  return trace;
}

std::vector<StreamUpdate> FlipBudgetStream(const FlipBudgetParams& params,
                                           uint64_t seed) {
  if (params.n < 1 || params.m < 1 || params.initial_mass < 1 ||
      params.initial_mass > params.M || params.lambda < 1) {
    throw std::invalid_argument("FlipBudgetStream: bad parameters");
  }
  SplitMix64 rng(seed);
  std::vector<StreamUpdate> out{{1, params.initial_mass}};
  std::vector<int64_t> f(params.n + 1, 0);
  f[1] = params.initial_mass;

  // Fp trace and, per prefix, the longest eps-flip chain ending there. A
  // candidate's chain length only needs the entries before it.
  std::vector<double> trace = {PowAbs(params.initial_mass, params.p)};
  if (params.p == 0.0) trace[0] = 1.0;
  std::vector<int64_t> chain = {1};
  double total = trace[0];
  auto chain_end = [&](double y) {
    const double lo = (1.0 - params.eps) * y;
    const double hi = (1.0 + params.eps) * y;
    int64_t best = 0;
    for (size_t j = 0; j < trace.size(); ++j) {
      if (trace[j] < lo || trace[j] > hi) best = std::max(best, chain[j]);
    }
    return best + 1;
  };
  auto next_total = [&](const StreamUpdate& u) {
    const int64_t x = f[u.index];
    const int64_t next = x + u.delta;
    if (params.p == 0.0) return total + (next != 0) - (x != 0);
    return total + (PowAbs(next, params.p) - PowAbs(x, params.p));
  };
  auto admissible = [&](const StreamUpdate& u) {
    if (std::llabs(f[u.index] + u.delta) > params.M) return false;
    const double y = std::max(0.0, next_total(u));
    if (y <= 0.0) return false;
    return chain_end(y) <= params.lambda;
  };

  while (static_cast<int64_t>(out.size()) < params.m) {
    StreamUpdate chosen{0, 0};
    for (int tries = 0; tries < 16; ++tries) {
      const StreamUpdate u{static_cast<int64_t>(rng.Below(params.n)) + 1,
                           rng.Coin() ? 1 : -1};
      if (admissible(u)) {
        chosen = u;
        break;
      }
    }
    for (int64_t i = 1; i <= params.n && chosen.delta == 0; ++i) {
      for (int64_t d : {1, -1}) {
        if (admissible({i, d})) {
          chosen = {i, d};
          break;
        }
      }
    }
    if (chosen.delta == 0) {
      throw std::runtime_error("FlipBudgetStream: flip budget leaves no move");
    }
    total = next_total(chosen);
    const double y = std::max(0.0, total);
    chain.push_back(chain_end(y));
    trace.push_back(y);
    f[chosen.index] += chosen.delta;
    out.push_back(chosen);
  }
  return out;
}

}  // namespace robust_streaming
