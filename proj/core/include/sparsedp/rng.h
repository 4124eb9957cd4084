// Copyright 2026 The sparsedp Authors
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

#ifndef SPARSEDP_RNG_H_
#define SPARSEDP_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

namespace sparsedp {

// SplitMix64 finalizer. Used to derive engine seeds and substream ids.
std::uint64_t Mix64(std::uint64_t x);

// Deterministic random stream identified by (seed, stream id).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Distributions are implemented here rather than taken from
// <random>, whose algorithms are implementation-defined, so a stream
// reproduces bit-identically across standard libraries.
//
// A stream is single-owner. Hand a Substream() to each independent task.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream whose identity depends only on (seed, stream_id, child).
  // Does not advance this stream.
  RngStream Substream(std::uint64_t child) const;

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on (0, 1). Safe to pass to log().
  double UniformOpen();
  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);
  bool Bernoulli(double p) { return Uniform() < p; }

  double StandardNormal();
  // Exponential with mean 1.
  double StandardExponential();
  // Laplace with the given scale (density exp(-|x|/scale)/(2 scale)).
  double Laplace(double scale);

  // First k entries of a uniformly random permutation of [0, n), via a
  // partial Fisher-Yates shuffle.
  std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                    std::size_t k);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace sparsedp

#endif  // SPARSEDP_RNG_H_
