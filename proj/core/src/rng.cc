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

#include "sparsedp/rng.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "sparsedp/error.h"

namespace sparsedp {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::seed_seq::result_type Lo(std::uint64_t v) {
  return static_cast<std::seed_seq::result_type>(v & 0xffffffffULL);
}
std::seed_seq::result_type Hi(std::uint64_t v) {
  return static_cast<std::seed_seq::result_type>(v >> 32);
}

std::mt19937_64 MakeEngine(std::uint64_t seed, std::uint64_t stream_id) {
  const std::uint64_t a = Mix64(seed);
  const std::uint64_t b = Mix64(a ^ Mix64(stream_id + 0x5851f42d4c957f2dULL));
  std::seed_seq seq{Lo(a), Hi(a), Lo(b), Hi(b)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(MakeEngine(seed, stream_id)) {}

RngStream RngStream::Substream(std::uint64_t child) const {
  return RngStream(seed_, Mix64(stream_id_ * 0x2545f4914f6cdd1dULL + child) ^
                              Mix64(child + 1));
}

double RngStream::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::UniformOpen() {
  // (k + 0.5) / 2^53 for k in [0, 2^53): never 0, never 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::UniformInt(std::uint64_t bound) {
  SPARSEDP_REQUIRE(bound > 0, "UniformInt: bound must be positive");
  // Rejection: discard the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

double RngStream::StandardNormal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = UniformOpen();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

double RngStream::StandardExponential() { return -std::log(UniformOpen()); }

double RngStream::Laplace(double scale) {
  const double sign = (engine_() >> 63) ? -1.0 : 1.0;
  return sign * scale * StandardExponential();
}

std::vector<std::size_t> RngStream::SampleWithoutReplacement(std::size_t n,
                                                             std::size_t k) {
  SPARSEDP_REQUIRE(k <= n, "SampleWithoutReplacement: k > n");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(UniformInt(n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(k);
  return perm;
}

}  // namespace sparsedp
