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

#include "sparsedp/mean_estimation.h"

#include <gtest/gtest.h>

#include <cmath>

#include "sparsedp/error.h"
#include "sparsedp/geometry.h"
#include "sparsedp/rng.h"

namespace sparsedp {
namespace {

// Mean of n random s-sparse unit vectors in dimension d.
Vector SparseMean(RngStream& r, std::size_t n, std::size_t s, std::size_t d) {
  Vector m = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : r.SampleWithoutReplacement(d, s)) {
      m[static_cast<Eigen::Index>(j)] +=
          (r.Bernoulli(0.5) ? 1.0 : -1.0) / std::sqrt(double(s));
    }
  }
  return m / double(n);
}

TEST(Sensitivity, ClosedForms) {
  EXPECT_DOUBLE_EQ(l1_sensitivity(1.0, 4, 10), 0.4);
  EXPECT_DOUBLE_EQ(l2_sensitivity(3.0, 6), 1.0);
  EXPECT_DOUBLE_EQ(projection_laplace_scale(1.0, 4, 10, 2.0), 0.2);
  EXPECT_DOUBLE_EQ(gaussian_sigma(1.0, 2, {1.0, 1.25 * std::exp(-0.5)}), 1.0);
  EXPECT_THROW(gaussian_sigma(1.0, 2, {1.0, 0.0}), InvalidArgument);
}

TEST(ProjectionMechanism, PathwiseBoundBothBranches) {
  RngStream r(1, 0);
  const std::size_t d = 256, s = 8, n = 64;
  for (int t = 0; t < 200; ++t) {
    const Vector zbar = SparseMean(r, n, s, d);
    for (PrivacyParams pp : {PrivacyParams{1.0, 0.0}, PrivacyParams{1.0, 1e-6}}) {
      const auto out = projection_mechanism(zbar, pp, n, 1.0, s, r);
      EXPECT_EQ(out.branch, pp.pure() ? MechanismBranch::kLaplace
                                      : MechanismBranch::kGaussian);
      const double bound = std::sqrt(2.0 * std::sqrt(double(s)) * out.noise_linf);
      EXPECT_LE((out.estimate - zbar).norm(), bound + 1e-7);
      EXPECT_LE(out.estimate.lpNorm<1>(), std::sqrt(double(s)) * (1 + 1e-12));
    }
  }
}

TEST(ProjectionMechanism, TestHooks) {
  RngStream r(2, 0);
  const Vector zbar = SparseMean(r, 10, 2, 16);
  ProjectionMechanismOptions o;
  o.zero_noise = true;
  EXPECT_EQ(projection_mechanism(zbar, {1, 0}, 10, 1, 2, r, o).estimate, zbar);
  o.zero_noise = false;
  o.disable_projection = true;
  const auto out = projection_mechanism(zbar, {1, 0}, 10, 1, 2, r, o);
  EXPECT_TRUE(out.estimate.isApprox(zbar + out.noise));
}

TEST(ProjectionMechanism, RejectsBadInput) {
  RngStream r(3, 0);
  const Vector big = Vector::Constant(4, 1.0);
  EXPECT_THROW(projection_mechanism(big, {1, 0}, 1, 1.0, 1, r), InvalidArgument);
  EXPECT_THROW(projection_mechanism(Vector::Zero(4), {1, 0}, 1, 1.0, 5, r),
               InvalidArgument);
}

TEST(GaussianRecovery, MeasurementCountAndBranch) {
  RecoveryConfig cfg;
  const PrivacyParams pp{1.0, 1e-6};
  const double ratio = 8 * std::log(1024.0 / 8) / std::log(1e6);
  EXPECT_EQ(recovery_measurements(100, pp, 8, 1024, cfg),
            static_cast<std::size_t>(std::ceil(100 * std::sqrt(ratio))));
  cfg.m_override = 7;
  EXPECT_EQ(recovery_measurements(100, pp, 8, 1024, cfg), 7u);
  EXPECT_TRUE(recovery_uses_direct_branch(1024, 1024));
  EXPECT_FALSE(recovery_uses_direct_branch(50, 100000));
}

TEST(GaussianRecovery, NoiselessCompressedSensingIsExact) {
  RngStream r(4, 0);
  const std::size_t d = 256, s = 4;
  RecoveryConfig cfg;
  cfg.m_override = static_cast<std::size_t>(std::ceil(8 * s * std::log(double(d) / s)));
  cfg.zero_measurement_noise = true;
  cfg.force_compressed_sensing = true;
  int exact = 0;
  for (int t = 0; t < 10; ++t) {
    Vector z = Vector::Zero(d);
    for (auto j : r.SampleWithoutReplacement(d, s)) z[j] = 0.5 * r.StandardNormal();
    const auto out = gaussian_l1_recovery(z, {1.0, 1e-6}, 100, 1.0, s, d, cfg, r);
    EXPECT_EQ(out.branch, MechanismBranch::kCompressedSensing);
    exact += (out.estimate - z).norm() < 1e-5;
  }
  EXPECT_GE(exact, 9);
}

TEST(GaussianRecovery, DirectBranchAddsGaussianNoise) {
  RngStream r(5, 0);
  const Vector z = Vector::Zero(64);
  const auto out = gaussian_l1_recovery(z, {1.0, 1e-6}, 100000, 1.0, 2, 64, {}, r);
  EXPECT_EQ(out.branch, MechanismBranch::kGaussianDirect);
  EXPECT_TRUE(out.estimate.isApprox(out.noise));
  EXPECT_THROW(gaussian_l1_recovery(z, {2.0, 1e-6}, 10, 1.0, 2, 64, {}, r),
               InvalidArgument);
}

}  // namespace
}  // namespace sparsedp
