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

#include <gtest/gtest.h>

#include <cmath>

#include "sparsedp/error.h"
#include "sparsedp/rng.h"

namespace sparsedp {
namespace {

TEST(Packing, LowerBoundFormula) {
  EXPECT_DOUBLE_EQ(packing_lower_bound(2, 8), 3.5);
  EXPECT_DOUBLE_EQ(packing_lower_bound(4, 16), 3.5 * 3.5);
}

TEST(Packing, SeparatedAndLargeEnough) {
  RngStream r(1, 0);
  const std::pair<std::size_t, std::size_t> cases[] = {
      {1, 4}, {2, 4}, {2, 8}, {3, 9}, {4, 12}, {4, 16}};
  for (auto [s, d] : cases) {
    const Packing P = greedy_sparse_packing(s, d, r);
    EXPECT_TRUE(P.exhaustive);
    EXPECT_GE(P.min_pairwise_l2, 1 / std::sqrt(2.0) - 1e-12) << s << "," << d;
    EXPECT_GE(double(P.points.size()), packing_lower_bound(s, d)) << s << "," << d;
    for (std::size_t a = 0; a < P.points.size(); ++a) {
      EXPECT_EQ(P.points[a].nnz(), s);
      EXPECT_NEAR(P.points[a].norms().l2, 1.0, 1e-12);
    }
    // Spot-check the reported minimum directly.
    if (P.points.size() >= 2) {
      const double d01 = (P.points[0].ToDense() - P.points[1].ToDense()).norm();
      EXPECT_GE(d01, P.min_pairwise_l2 - 1e-12);
    }
  }
}

TEST(Packing, SampledWhenTooManySubsets) {
  RngStream r(2, 0);
  PackingOptions o;
  o.samples = 2000;
  const Packing P = greedy_sparse_packing(8, 200, r, o);
  EXPECT_FALSE(P.exhaustive);
  EXPECT_GE(P.min_pairwise_l2, 1 / std::sqrt(2.0) - 1e-12);
  EXPECT_THROW(greedy_sparse_packing(3, 5, r), InvalidArgument);
}

TEST(Packing, HardDatasetCopiesOnePoint) {
  RngStream r(3, 0);
  const Packing P = greedy_sparse_packing(2, 8, r);
  const HardDataset h = packing_hard_dataset(P, 10, r);
  ASSERT_EQ(h.S.size(), 10u);
  for (const auto& z : h.S.points) EXPECT_EQ(z.indices(), P.points[h.l].indices());
}

Dataset Block(RngStream& r, std::size_t n0, std::size_t t) {
  Dataset S;
  S.bounds = {t, 1, 1.0};
  for (std::size_t i = 0; i < n0; ++i) {
    S.points.emplace_back(t, std::vector<std::pair<std::size_t, double>>{
                                 {r.UniformInt(t), r.Bernoulli(0.5) ? 1.0 : -1.0}});
  }
  return S;
}

TEST(BlockDiagonal, MeanIdentityIsExact) {
  RngStream r(4, 0);
  const std::size_t n0 = 8, t = 4, K = 3, n = 32, d = 16;
  const auto bd = block_diagonal_dataset(
      [&](RngStream& rr) { return Block(rr, n0, t); }, n0, t, K, n, d, r);
  ASSERT_EQ(bd.S.size(), n);
  EXPECT_EQ(dataset_mean(bd.S), block_diagonal_mean(bd.block_means, n0, n, d));
  // Rows past K n0 are zero.
  for (std::size_t i = K * n0; i < n; ++i) EXPECT_EQ(bd.S.points[i].nnz(), 0u);
  EXPECT_THROW(block_diagonal_dataset(
                   [&](RngStream& rr) { return Block(rr, n0, t); }, n0, t, 5,
                   n, d, r),
               InvalidArgument);
}

TEST(BlockDiagonal, ZeroPadding) {
  RngStream r(5, 0);
  Dataset S = Block(r, 4, 3);
  const Dataset P = zero_pad_dataset(S, 8);
  EXPECT_EQ(P.size(), 8u);
  EXPECT_TRUE(dataset_mean(P).isApprox(dataset_mean(S) / 2));
  EXPECT_THROW(zero_pad_dataset(S, 2), InvalidArgument);
}

}  // namespace
}  // namespace sparsedp
