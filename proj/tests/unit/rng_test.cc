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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sparsedp/error.h"

namespace sparsedp {
namespace {

TEST(RngStream, SameSeedAndStreamReproduce) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngStream, DistinctStreamsDiffer) {
  RngStream a(42, 7), b(42, 8), c(43, 7);
  const auto x = a.NextU64();
  EXPECT_NE(x, b.NextU64());
  EXPECT_NE(x, c.NextU64());
}

TEST(RngStream, SubstreamDoesNotAdvanceParent) {
  RngStream a(1, 2), b(1, 2);
  (void)a.Substream(5);
  EXPECT_EQ(a.NextU64(), b.NextU64());
  RngStream c1 = a.Substream(3), c2 = b.Substream(3);
  EXPECT_EQ(c1.NextU64(), c2.NextU64());
  EXPECT_NE(a.Substream(3).NextU64(), a.Substream(4).NextU64());
}

TEST(RngStream, UniformRanges) {
  RngStream r(3, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = r.UniformOpen();
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
    EXPECT_LT(r.UniformInt(7), 7u);
  }
  EXPECT_THROW(r.UniformInt(0), InvalidArgument);
}

TEST(RngStream, MomentsOfContinuousDraws) {
  RngStream r(11, 0);
  const int n = 200000;
  double sn = 0, sn2 = 0, se = 0, sl = 0, sl2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = r.StandardNormal();
    sn += z;
    sn2 += z * z;
    se += r.StandardExponential();
    const double l = r.Laplace(2.0);
    sl += l;
    sl2 += l * l;
  }
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.015);
  EXPECT_NEAR(se / n, 1.0, 0.01);
  EXPECT_NEAR(sl / n, 0.0, 0.03);
  EXPECT_NEAR(sl2 / n, 8.0, 0.15);  // 2 b^2
}

TEST(RngStream, SampleWithoutReplacementIsDistinctAndUniform) {
  RngStream r(5, 0);
  std::vector<int> hits(10, 0);
  for (int t = 0; t < 20000; ++t) {
    const auto s = r.SampleWithoutReplacement(10, 3);
    ASSERT_EQ(s.size(), 3u);
    std::set<std::size_t> u(s.begin(), s.end());
    ASSERT_EQ(u.size(), 3u);
    for (auto i : s) {
      ASSERT_LT(i, 10u);
      ++hits[i];
    }
  }
  // Each index appears with probability 3/10.
  for (int h : hits) EXPECT_NEAR(h / 20000.0, 0.3, 0.015);
  const auto all = r.SampleWithoutReplacement(6, 6);
  std::vector<std::size_t> sorted(all);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(sorted[i], i);
}

}  // namespace
}  // namespace sparsedp
