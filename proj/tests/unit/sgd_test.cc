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

#include "sparsedp/sgd.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sparsedp/error.h"
#include "sparsedp/harness/problems.h"
#include "sparsedp/hyperparams.h"
#include "sparsedp/pathwise.h"
#include "sparsedp/rng.h"

namespace sparsedp {
namespace {

using harness::make_problem;
using harness::Problem;
using harness::ProblemKind;

MeanMechanism Projection() {
  MeanMechanism m;
  m.kind = MechanismKind::kProjection;
  return m;
}

TEST(Sgd, ZeroStepSizeReturnsTheStart) {
  RngStream r(1, 0);
  Problem p = make_problem(ProblemKind::kLinear, 32, 2, 256, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  const Vector x0 = Vector::Constant(32, 0.05);
  const RunTrace tr = run_bias_reduced_sgd(p.S, x0, {1.0, 1e-6}, 0.0, *p.loss,
                                           p.X, Mode::kConvex, r, cfg);
  for (const auto& x : tr.iterates) EXPECT_EQ(x, x0);
  EXPECT_TRUE(tr.output.isApprox(x0));
  EXPECT_EQ(tr.iterates.size(), tr.T + 2);
  EXPECT_EQ(tr.gradients.size(), tr.T + 1);
}

TEST(Sgd, ReproducibleFromSeed) {
  RngStream d(2, 0);
  Problem p = make_problem(ProblemKind::kLinear, 32, 2, 256, d);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  RngStream a(5, 1), b(5, 1);
  const auto ta = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.05, *p.loss,
                                       p.X, Mode::kConvex, a, cfg);
  const auto tb = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.05, *p.loss,
                                       p.X, Mode::kConvex, b, cfg);
  EXPECT_EQ(ta.T, tb.T);
  EXPECT_EQ(ta.output, tb.output);
}

TEST(Sgd, ConvexOutputIsTheIterateAverage) {
  RngStream r(3, 0);
  Problem p = make_problem(ProblemKind::kLinear, 16, 2, 128, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  const auto tr = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.1, *p.loss,
                                       p.X, Mode::kConvex, r, cfg);
  Vector avg = Vector::Zero(16);
  for (std::size_t t = 0; t <= tr.T; ++t) avg += tr.iterates[t];
  avg /= double(tr.T + 1);
  EXPECT_LE((avg - tr.output).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(Sgd, NonconvexOutputIsOneOfTheIterates) {
  RngStream r(4, 0);
  Problem p = make_problem(ProblemKind::kNonconvexSmooth, 16, 2, 128, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  const auto tr = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.1, *p.loss,
                                       p.X, Mode::kNonconvex, r, cfg);
  ASSERT_LE(tr.t_hat, tr.T);
  EXPECT_EQ(tr.output, tr.iterates[tr.t_hat]);
}

TEST(Sgd, BudgetHoldsAtHalt) {
  RngStream r(5, 0);
  Problem p = make_problem(ProblemKind::kLinear, 32, 2, 1024, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  cfg.record_trace = false;
  for (int t = 0; t < 10; ++t) {
    RngStream rr = r.Substream(t);
    const auto tr = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-8}, 0.05, *p.loss,
                                         p.X, Mode::kConvex, rr, cfg);
    const BudgetReport b = budget_at_halt(tr);
    EXPECT_TRUE(b.ok) << b.detail;
    EXPECT_LE(b.level, 0.5);
    EXPECT_LE(b.delta_admitted, 1e-8 / 4);
    EXPECT_LE(b.eps_total, 1.0);
    EXPECT_EQ(tr.draws.size(), tr.T + 1);
  }
}

// With n = 2 no step is admitted, but the halting step still runs.
TEST(Sgd, TinyDatasetRunsExactlyOneStep) {
  Dataset S;
  S.bounds = {2, 1, 1.0};
  S.points = {SparseVector(2, {{0, 1.0}}), SparseVector(2, {{1, -1.0}})};
  LossConstants c;
  c.L = 1;
  c.s = 1;
  c.d = 2;
  LinearLoss loss(c);
  RngStream r(6, 0);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  const auto tr = run_bias_reduced_sgd(S, Vector::Zero(2), {1.0, 0.1}, 0.1,
                                       loss, L2Ball{1.0}, Mode::kConvex, r, cfg);
  EXPECT_EQ(tr.T, 0u);
  EXPECT_EQ(tr.draws.size(), 1u);
  EXPECT_EQ(tr.output, Vector::Zero(2));
}

TEST(Sgd, RejectsBadArguments) {
  RngStream r(7, 0);
  Problem p = make_problem(ProblemKind::kLinear, 8, 2, 64, r);
  EXPECT_THROW(run_bias_reduced_sgd(p.S, p.x0, {1.0, 0.0}, 0.1, *p.loss, p.X,
                                    Mode::kConvex, r),
               InvalidArgument);
  EXPECT_THROW(run_bias_reduced_sgd(p.S, Vector::Constant(8, 5.0), {1.0, 1e-6},
                                    0.1, *p.loss, p.X, Mode::kConvex, r),
               InvalidArgument);
  EXPECT_THROW(run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, -1, *p.loss, p.X,
                                    Mode::kConvex, r),
               InvalidArgument);
}

TEST(Pathwise, RegretHoldsOnConvexTraces) {
  RngStream r(8, 0);
  Problem p = make_problem(ProblemKind::kSparseLeastSquares, 32, 2, 256, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  for (int t = 0; t < 5; ++t) {
    RngStream rr = r.Substream(t);
    const auto tr = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.05, *p.loss,
                                         p.X, Mode::kConvex, rr, cfg);
    const auto res = check_pathwise_regret(tr, *p.loss, p.S, *p.x_star);
    EXPECT_TRUE(res.holds) << res.lhs << " > " << res.rhs;
  }
}

TEST(Pathwise, StationarityHoldsOnNonconvexTraces) {
  RngStream r(9, 0);
  Problem p = make_problem(ProblemKind::kNonconvexSmooth, 32, 2, 256, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  for (int t = 0; t < 5; ++t) {
    RngStream rr = r.Substream(t);
    const auto tr = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.5, *p.loss,
                                         p.X, Mode::kNonconvex, rr, cfg);
    const auto res = check_pathwise_stationarity(tr, *p.loss, p.S);
    EXPECT_TRUE(res.realized.holds) << res.realized.lhs << " > " << res.realized.rhs;
  }
}

TEST(Pathwise, TamperedTraceIsRejected) {
  RngStream r(10, 0);
  Problem p = make_problem(ProblemKind::kLinear, 16, 2, 128, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  auto tr = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.05, *p.loss, p.X,
                                 Mode::kConvex, r, cfg);
  EXPECT_NO_THROW(check_step_reconstruction(tr));
  tr.iterates[1][0] += 0.01;
  EXPECT_THROW(check_pathwise_regret(tr, *p.loss, p.S, *p.x_star),
               InternalConsistencyError);
  cfg.record_trace = false;
  auto bare = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.05, *p.loss, p.X,
                                   Mode::kConvex, r, cfg);
  EXPECT_THROW(max_reconstruction_error(bare), InvalidArgument);
}

TEST(Sgd, TraceCsvHasOneRowPerStep) {
  RngStream r(11, 0);
  Problem p = make_problem(ProblemKind::kLinear, 16, 2, 128, r);
  SgdConfig cfg;
  cfg.mechanism = Projection();
  cfg.record_objective = true;
  const auto tr = run_bias_reduced_sgd(p.S, p.x0, {1.0, 1e-6}, 0.05, *p.loss,
                                       p.X, Mode::kConvex, r, cfg);
  std::ostringstream os;
  write_trace_csv(os, tr);
  const std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), static_cast<long>(tr.T + 2));
}

TEST(Hyperparams, FormulaExample) {
  LossConstants c;
  c.L = 1;
  c.s = 1;
  c.d = 3;
  c.D = 1;
  LinearLoss f(c);
  HyperConstants k;
  k.C = 1;
  k.C_prime = 1;
  const PrivacyParams pp{1.0, std::exp(-1.0)};
  const auto h = recommended_hyperparams(f, 256, pp, Mode::kConvex, k);
  const double core = std::log(3.0);
  EXPECT_DOUBLE_EQ(h.b, std::pow(core, 0.25) / 16);
  EXPECT_DOUBLE_EQ(h.nu2, std::log(256.0) * std::sqrt(core));
  EXPECT_NEAR(h.tau, 256 / std::log(2 * std::exp(1.0)), 1e-9);  // ~151.2
  EXPECT_NEAR(h.eta, 1 / (std::sqrt(h.nu2) * std::sqrt(h.tau)), 1e-15);
  EXPECT_NEAR(h.U, std::sqrt(h.nu2 * h.tau) + h.b * h.tau, 1e-9);
}

TEST(Hyperparams, NonconvexNeedsGammaAndH) {
  LossConstants c;
  c.L = 1;
  c.s = 2;
  c.d = 16;
  SigmoidLoss f(c);
  EXPECT_THROW(recommended_hyperparams(f, 64, {1, 1e-6}, Mode::kNonconvex),
               InvalidArgument);
  f.mutable_constants().H = 0.1;
  f.mutable_constants().Gamma = 1.0;
  const auto h = recommended_hyperparams(f, 64, {1, 1e-6}, Mode::kNonconvex);
  EXPECT_NEAR(h.eta, std::sqrt(1.0 / (0.1 * h.tau * h.nu2)), 1e-15);
}

}  // namespace
}  // namespace sparsedp
