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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sparsedp/error.h"
#include "sparsedp/harness/config.h"
#include "sparsedp/harness/csv.h"
#include "sparsedp/harness/grid.h"
#include "sparsedp/harness/problems.h"
#include "sparsedp/harness/slope.h"
#include "sparsedp/rng.h"

namespace sparsedp::harness {
namespace {

TEST(Config, ParseAndOverride) {
  std::istringstream in("# comment\nn = 1024, 2048\neps=0.5\nname = sls \n\nflag = true\n");
  Config c = Config::Parse(in);
  EXPECT_EQ(c.GetDoubleList("n", {}), (std::vector<double>{1024, 2048}));
  EXPECT_DOUBLE_EQ(c.GetDouble("eps", 1), 0.5);
  EXPECT_EQ(c.GetString("name", ""), "sls");
  EXPECT_TRUE(c.GetBool("flag", false));
  EXPECT_EQ(c.GetU64("missing", 7), 7u);
  c.SetAssignment("eps=2");
  EXPECT_DOUBLE_EQ(c.GetDouble("eps", 1), 2);
  EXPECT_THROW(c.SetAssignment("noequals"), InvalidArgument);
  EXPECT_EQ(ParseU64("1e3"), 1000u);
  EXPECT_THROW(ParseU64("1.5"), InvalidArgument);
  EXPECT_THROW(ParseDouble("abc"), InvalidArgument);
  EXPECT_EQ(SplitList(" a, b ,c").size(), 3u);
}

TEST(Csv, ShortestRoundTripAndQuoting) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(ParseDouble(FormatDouble(1.0 / 3)), 1.0 / 3);
  std::ostringstream os;
  {
    CsvWriter w(os, {"a", "b"});
    w.Row({"1", "x"});
    EXPECT_EQ(w.rows(), 1u);
    EXPECT_THROW(w.Row({"1"}), InvalidArgument);
    EXPECT_THROW(w.Row({"1", "x,y"}), InvalidArgument);
  }
  std::istringstream in(os.str());
  const CsvTable t = read_csv(in);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][t.Column("b")], "x");
  EXPECT_THROW(t.Column("c"), InvalidArgument);
}

TEST(Grid, CartesianProductAndDeterminism) {
  Config c;
  c.Set("n", "64,128");
  c.Set("d", "32");
  c.Set("s", "2");
  c.Set("trials", "3");
  c.Set("seed", "9");
  ExperimentConfig e = make_experiment(c);
  ASSERT_EQ(e.cells.size(), 2u);
  const TrialFn fn = [](const GridCell& cell, RngStream& r) {
    return Metrics{{"u", r.Uniform()}, {"n", double(cell.n)}};
  };
  const auto a = run_grid(e, fn);
  e.threads = 3;
  const auto b = run_grid(e, fn);
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].metric, b[i].metric);
  }
  const auto sum = summarize(a);
  EXPECT_EQ(sum.size(), 4u);
  std::ostringstream os;
  write_results_csv(os, a);
  EXPECT_EQ(os.str().rfind("cell,n,d,s,eps,delta,trial,metric,value\n", 0), 0u);
}

TEST(Grid, Quantiles) {
  EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({5}, 0.9), 5);
}

TEST(Slope, RecoversAPowerLaw) {
  std::vector<double> x, y;
  for (double n : {256.0, 512.0, 1024.0, 2048.0}) {
    for (int k = 0; k < 3; ++k) {
      x.push_back(n);
      y.push_back(3.0 * std::pow(n, -0.5) * (1 + 0.01 * (k - 1)));
    }
  }
  const SlopeFit f = fit_slope(x, y);
  EXPECT_NEAR(f.slope, -0.5, 1e-12);
  EXPECT_EQ(f.x.size(), 4u);
  EXPECT_THROW(fit_slope({1, 2}, {1, 1}), InvalidArgument);
}

TEST(Slope, FromCsv) {
  std::ostringstream os;
  os << "cell,n,d,s,eps,delta,trial,metric,value\n";
  int cell = 0;
  for (double n : {100.0, 200.0, 400.0}) {
    os << cell << ',' << n << ",8,2,1,1e-6,0,err," << 1 / n << '\n';
    os << cell++ << ',' << n << ",8,2,1,1e-6,0,other,1\n";
  }
  std::istringstream in(os.str());
  EXPECT_NEAR(fit_slope_csv(in, "n", "value", "err").slope, -1.0, 1e-12);
}

class ProblemConstants : public ::testing::TestWithParam<ProblemKind> {};

TEST_P(ProblemConstants, DeclaredConstantsHoldEmpirically) {
  RngStream r(3, 0);
  const Problem p = make_problem(GetParam(), 64, 4, 256, r);
  EXPECT_TRUE(validate_dataset(p.S).empty());
  EXPECT_TRUE(contains(p.X, p.x0));
  RngStream rc(4, 0);
  const ConstantCheck c = check_declared_constants(p, rc, 500);
  EXPECT_TRUE(c.consistent) << ToString(GetParam()) << " grad " << c.max_grad_norm
                            << " curv " << c.max_curvature << " range " << c.max_range;
  if (p.x_star) {
    EXPECT_TRUE(contains(p.X, *p.x_star, 1e-9));
    EXPECT_LE(p.certificate, 1e-6);
    EXPECT_NEAR(empirical_risk(*p.loss, p.S, *p.x_star), p.f_star, 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, ProblemConstants,
                         ::testing::Values(ProblemKind::kLinear,
                                           ProblemKind::kSparseLeastSquares,
                                           ProblemKind::kEmbeddingToy,
                                           ProblemKind::kNonconvexSmooth),
                         [](const auto& info) {
                           std::string name = ToString(info.param);
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

TEST(Problems, ParseNames) {
  EXPECT_EQ(ParseProblemKind("sls"), ProblemKind::kSparseLeastSquares);
  EXPECT_EQ(ToString(ProblemKind::kEmbeddingToy), "embedding-toy");
  EXPECT_THROW(ParseProblemKind("nope"), InvalidArgument);
}

TEST(Problems, PopularSupportIsSkewed) {
  RngStream r(5, 0);
  std::vector<int> hits(100, 0);
  for (int t = 0; t < 2000; ++t)
    for (auto j : popular_support(100, 3, 1.0, r)) ++hits[j];
  EXPECT_GT(hits[0], 5 * hits[99]);
}

}  // namespace
}  // namespace sparsedp::harness
