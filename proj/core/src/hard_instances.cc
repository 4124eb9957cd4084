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

#include "sparsedp/hard_instances.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "sparsedp/error.h"

namespace sparsedp {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits to_bits(const std::vector<std::size_t>& supp, std::size_t d) {
  Bits b((d + 63) / 64, 0);
  for (std::size_t j : supp) b[j / 64] |= std::uint64_t{1} << (j % 64);
  return b;
}

std::size_t common(const Bits& a, const Bits& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    r *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return r;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

double packing_lower_bound(std::size_t s, std::size_t d) {
  const double sd = static_cast<double>(s);
  return std::pow(static_cast<double>(d) / sd - 0.5, sd / 2.0);
}

Packing greedy_sparse_packing(std::size_t s, std::size_t d, RngStream& rng,
                              const PackingOptions& opts) {
  SPARSEDP_REQUIRE(s >= 1 && 2 * s <= d,
                   "greedy_sparse_packing: requires 1 <= s <= d/2");
  SPARSEDP_REQUIRE(opts.cap >= 1, "greedy_sparse_packing: cap must be positive");
  Packing P;
  P.s = s;
  P.d = d;
  std::vector<Bits> kept;
  // |common| < 3s/4, i.e. 4 |common| < 3s.
  auto try_add = [&](const std::vector<std::size_t>& supp) {
    ++P.candidates;
    Bits b = to_bits(supp, d);
    for (const auto& k : kept) {
      if (4 * common(b, k) >= 3 * s) return;
    }
    kept.push_back(std::move(b));
    P.supports.push_back(supp);
  };

  P.exhaustive = binomial(d, s) <= opts.enumeration_limit;
  if (P.exhaustive) {
    std::vector<std::size_t> c(s);
    for (std::size_t i = 0; i < s; ++i) c[i] = i;
    do {
      try_add(c);
    } while (P.supports.size() < opts.cap && next_combination(c, d));
    // Stopping at the cap leaves part of the family unscanned.
    if (P.supports.size() >= opts.cap) {
      std::vector<std::size_t> probe = c;
      P.exhaustive = !next_combination(probe, d);
    }
  } else {
    for (std::size_t t = 0; t < opts.samples && P.supports.size() < opts.cap;
         ++t) {
      auto c = rng.SampleWithoutReplacement(d, s);
      std::sort(c.begin(), c.end());
      try_add(c);
    }
  }

  const double v = 1.0 / std::sqrt(static_cast<double>(s));
  for (const auto& supp : P.supports) {
    std::vector<std::pair<std::size_t, double>> e;
    for (std::size_t j : supp) e.emplace_back(j, v);
    P.points.emplace_back(d, std::move(e));
  }
  P.min_pairwise_l2 = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      const double diff = 2.0 * static_cast<double>(s - common(kept[a], kept[b]));
      P.min_pairwise_l2 =
          std::min(P.min_pairwise_l2, std::sqrt(diff / static_cast<double>(s)));
    }
  }
  return P;
}

HardDataset packing_hard_dataset(const Packing& P, std::size_t n,
                                 RngStream& rng) {
  SPARSEDP_REQUIRE(!P.points.empty(), "packing_hard_dataset: empty packing");
  SPARSEDP_REQUIRE(n >= 1, "packing_hard_dataset: n must be positive");
  HardDataset h;
  h.l = static_cast<std::size_t>(rng.UniformInt(P.points.size()));
  h.S.points.assign(n, P.points[h.l]);
  h.S.bounds = {P.d, P.s, 1.0};
  return h;
}

BlockDiagonalDataset block_diagonal_dataset(const BlockSampler& block_sampler,
                                            std::size_t n0, std::size_t t,
                                            std::size_t K, std::size_t n,
                                            std::size_t d, RngStream& rng) {
  SPARSEDP_REQUIRE(n0 >= 1 && t >= 1 && K >= 1,
                   "block_diagonal_dataset: n0, t and K must be positive");
  SPARSEDP_REQUIRE(K * n0 <= n && K * t <= d,
                   "block_diagonal_dataset: requires K <= min(n/n0, d/t)");
  BlockDiagonalDataset out;
  out.S.bounds = {d, 0, 0.0};
  out.S.points.reserve(n);
  for (std::size_t k = 0; k < K; ++k) {
    RngStream block_rng = rng.Substream(k);
    const Dataset block = block_sampler(block_rng);
    SPARSEDP_REQUIRE(block.size() == n0 && block.bounds.d == t,
                     "block_diagonal_dataset: block has the wrong shape");
    out.block_means.push_back(dataset_mean(block));
    out.S.bounds.s = std::max(out.S.bounds.s, block.bounds.s);
    out.S.bounds.L = std::max(out.S.bounds.L, block.bounds.L);
    for (const auto& z : block.points) {
      SPARSEDP_REQUIRE(z.dim() == t, "block_diagonal_dataset: dimension mismatch");
      std::vector<std::pair<std::size_t, double>> e;
      for (std::size_t i = 0; i < z.nnz(); ++i) {
        e.emplace_back(k * t + z.indices()[i], z.values()[i]);
      }
      out.S.points.emplace_back(d, std::move(e));
    }
  }
  out.S.points.resize(n, SparseVector(d));
  return out;
}

Vector block_diagonal_mean(const std::vector<Vector>& block_means,
                           std::size_t n0, std::size_t n, std::size_t d) {
  SPARSEDP_REQUIRE(n >= 1, "block_diagonal_mean: n must be positive");
  Vector m = Vector::Zero(static_cast<Eigen::Index>(d));
  const double w = static_cast<double>(n0) / static_cast<double>(n);
  Eigen::Index off = 0;
  for (const auto& b : block_means) {
    SPARSEDP_REQUIRE(off + b.size() <= m.size(),
                     "block_diagonal_mean: blocks exceed d");
    m.segment(off, b.size()) = w * b;
    off += b.size();
  }
  return m;
}

Dataset zero_pad_dataset(const Dataset& S, std::size_t n) {
  SPARSEDP_REQUIRE(n >= S.size(), "zero_pad_dataset: n below the dataset size");
  Dataset out = S;
  out.points.resize(n, SparseVector(S.bounds.d));
  if (out.has_labels()) out.labels.resize(n, 0.0);
  return out;
}

}  // namespace sparsedp
