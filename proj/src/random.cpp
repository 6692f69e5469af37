// Copyright 2026 The Interf-MS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "interfms/random.hpp"

#include <cmath>

#include "interfms/constants.hpp"
#include "interfms/errors.hpp"

namespace interfms {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t stream_index) {
  return RandomStream(splitmix64(seed + (stream_index + 1) * 0x9E3779B97F4A7C15ULL));
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

CategoricalSampler::CategoricalSampler(std::span<const double> weights) {
  if (weights.empty()) throw DimensionMismatch("categorical sampler needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("categorical weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("categorical weights must not all be zero");
  cdf_.resize(weights.size());
  double running = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    cdf_[i] = running / total;
    if (weights[i] > 0.0) last_nonzero_ = i;
  }
}

std::size_t CategoricalSampler::sample(RandomStream& rng) const {
  const double u = rng.uniform();
  for (std::size_t i = 0; i < cdf_.size(); ++i) {
    if (u < cdf_[i]) return i;
  }
  return last_nonzero_;
}

}  // namespace interfms
