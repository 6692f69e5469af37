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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace interfms {

/// SplitMix64 finaliser; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seedable random stream with fully specified output.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// Conversions to doubles are done here rather than through the
/// implementation-defined <random> distributions:
///   uniform(): top 53 bits of one engine word, times 2^-53, in [0, 1).
///   normal():  Box-Muller on two uniform() draws, cosine branch only.
/// Stream (seed, index) is seeded with splitmix64(seed + (index + 1) * phi64),
/// so work split into indexed batches reproduces regardless of scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  static RandomStream derive(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF sampler over a finite set of weights.
class CategoricalSampler {
 public:
  /// Weights must be non-negative with a positive sum; they are normalised.
  explicit CategoricalSampler(std::span<const double> weights);
  std::size_t sample(RandomStream& rng) const;
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
  std::size_t last_nonzero_ = 0;
};

}  // namespace interfms
