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

#include <cmath>
#include <sstream>

#include "sparsedp/basis_pursuit.h"
#include "sparsedp/error.h"
#include "sparsedp/geometry.h"
#include "sparsedp/noise.h"

namespace sparsedp {

std::string ToString(MechanismBranch b) {
  switch (b) {
    case MechanismBranch::kLaplace:
      return "laplace";
    case MechanismBranch::kGaussian:
      return "gaussian";
    case MechanismBranch::kGaussianDirect:
      return "gaussian-direct";
    case MechanismBranch::kCompressedSensing:
      return "compressed-sensing";
  }
  return "unknown";
}

double l1_sensitivity(double L, std::size_t s, std::size_t n) {
  SPARSEDP_REQUIRE(L > 0 && s > 0 && n > 0, "l1_sensitivity: bad arguments");
  return 2.0 * L * std::sqrt(static_cast<double>(s)) / static_cast<double>(n);
}

double l2_sensitivity(double L, std::size_t n) {
  SPARSEDP_REQUIRE(L > 0 && n > 0, "l2_sensitivity: bad arguments");
  return 2.0 * L / static_cast<double>(n);
}

double projection_laplace_scale(double L, std::size_t s, std::size_t n,
                                double eps) {
  return l1_sensitivity(L, s, n) / eps;
}

double gaussian_sigma(double L, std::size_t n, const PrivacyParams& pp) {
  SPARSEDP_REQUIRE(pp.delta > 0, "gaussian_sigma: delta must be positive");
  return std::sqrt(8.0 * L * L * std::log(1.25 / pp.delta)) /
         (static_cast<double>(n) * pp.eps);
}

MechanismOutput projection_mechanism(const Vector& zbar,
                                     const PrivacyParams& pp, std::size_t n,
                                     double L, std::size_t s, RngStream& rng,
                                     const ProjectionMechanismOptions& opts) {
  validate_privacy(pp);
  const auto d = static_cast<std::size_t>(zbar.size());
  SPARSEDP_REQUIRE(n >= 1, "projection_mechanism: n must be positive");
  SPARSEDP_REQUIRE(L > 0, "projection_mechanism: L must be positive");
  SPARSEDP_REQUIRE(s >= 1 && s <= d, "projection_mechanism: need 1 <= s <= d");
  SPARSEDP_REQUIRE(zbar.allFinite(), "projection_mechanism: non-finite mean");
  const double radius = L * std::sqrt(static_cast<double>(s));
  SPARSEDP_REQUIRE(zbar.lpNorm<1>() <= radius * (1 + 1e-9),
                   "projection_mechanism: mean outside the l1 ball of radius "
                   "L sqrt(s)");

  MechanismOutput out;
  double scale = 0.0;
  if (pp.pure()) {
    out.branch = MechanismBranch::kLaplace;
    scale = projection_laplace_scale(L, s, n, pp.eps);
    out.noise = opts.zero_noise ? Vector::Zero(zbar.size())
                                : laplace_vector(scale, d, rng);
  } else {
    out.branch = MechanismBranch::kGaussian;
    scale = gaussian_sigma(L, n, pp);
    out.noise = opts.zero_noise ? Vector::Zero(zbar.size())
                                : gaussian_vector(scale, d, rng);
  }
  out.meta["scale"] = scale;
  out.noise_linf = out.noise.lpNorm<Eigen::Infinity>();
  const Vector noisy = zbar + out.noise;
  if (opts.disable_projection) {
    out.estimate = noisy;
    return out;
  }
  const auto proj = project_l1_ball(noisy, radius);
  out.estimate = proj.point;
  out.meta["projected"] = proj.active ? 1.0 : 0.0;

  const double err = (out.estimate - zbar).norm();
  const double bound = std::sqrt(2.0 * radius * out.noise_linf);
  out.meta["pathwise_bound"] = bound;
  if (err > bound + 1e-7) {
    std::ostringstream os;
    os.precision(17);
    os << "projection_mechanism: pathwise bound violated, error " << err
       << " > bound " << bound;
    throw InternalConsistencyError(os.str());
  }
  return out;
}

std::size_t recovery_measurements(std::size_t n, const PrivacyParams& pp,
                                  std::size_t s, std::size_t d,
                                  const RecoveryConfig& cfg) {
  if (cfg.m_override) {
    SPARSEDP_REQUIRE(*cfg.m_override >= 1, "recovery: m must be positive");
    return *cfg.m_override;
  }
  const double sd = static_cast<double>(s);
  const double ratio = sd * std::log(static_cast<double>(d) / sd) /
                       std::log(1.0 / pp.delta);
  const double m = std::ceil(cfg.c_m * static_cast<double>(n) * pp.eps *
                             std::sqrt(ratio));
  return m < 1.0 ? 1 : static_cast<std::size_t>(m);
}

bool recovery_uses_direct_branch(std::size_t m, std::size_t d) {
  if (m >= d) return true;
  const double lm = std::log(static_cast<double>(std::max<std::size_t>(m, 2)));
  return static_cast<double>(d) < static_cast<double>(m) * lm * lm;
}

MechanismOutput gaussian_l1_recovery(const Vector& zbar,
                                     const PrivacyParams& pp, std::size_t n,
                                     double L, std::size_t s, std::size_t d,
                                     const RecoveryConfig& cfg,
                                     RngStream& rng) {
  validate_privacy(pp);
  SPARSEDP_REQUIRE(pp.delta > 0, "gaussian_l1_recovery: requires delta > 0");
  SPARSEDP_REQUIRE(pp.eps <= 1, "gaussian_l1_recovery: requires eps <= 1");
  SPARSEDP_REQUIRE(s >= 1 && d >= 2 * s, "gaussian_l1_recovery: requires d >= 2s");
  SPARSEDP_REQUIRE(static_cast<std::size_t>(zbar.size()) == d,
                   "gaussian_l1_recovery: zbar has wrong dimension");
  SPARSEDP_REQUIRE(n >= 1 && L > 0, "gaussian_l1_recovery: bad n or L");

  MechanismOutput out;
  const std::size_t m = recovery_measurements(n, pp, s, d, cfg);
  out.meta["m"] = static_cast<double>(m);

  const bool direct = recovery_uses_direct_branch(m, d) &&
                      !(cfg.force_compressed_sensing && m < d);
  if (direct) {
    out.branch = MechanismBranch::kGaussianDirect;
    const double sigma = gaussian_sigma(L, n, pp);
    out.meta["sigma"] = sigma;
    out.noise = gaussian_vector(sigma, d, rng);
    out.noise_linf = out.noise.lpNorm<Eigen::Infinity>();
    out.estimate = zbar + out.noise;
    return out;
  }

  out.branch = MechanismBranch::kCompressedSensing;
  const double sd = static_cast<double>(s);
  const double rip_m = cfg.c_rip * sd * std::log(static_cast<double>(d) / sd);
  out.meta["rip_heuristic_m"] = rip_m;
  if (static_cast<double>(m) < rip_m) {
    out.warnings.push_back("m = " + std::to_string(m) +
                           " is below the restricted-isometry heuristic " +
                           std::to_string(rip_m));
  }

  const auto mi = static_cast<Eigen::Index>(m);
  const auto di = static_cast<Eigen::Index>(d);
  const double a_scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix A(mi, di);
  for (Eigen::Index i = 0; i < mi; ++i) {
    for (Eigen::Index j = 0; j < di; ++j) A(i, j) = a_scale * rng.StandardNormal();
  }
  const double sigma = std::sqrt(18.0 * L * L * std::log(2.5 / pp.delta)) /
                       (static_cast<double>(n) * pp.eps);
  out.meta["sigma"] = sigma;
  out.noise = cfg.zero_measurement_noise ? Vector::Zero(mi)
                                         : gaussian_vector(sigma, m, rng);
  out.noise_linf = out.noise.lpNorm<Eigen::Infinity>();

  BasisPursuitProblem bp;
  bp.A = std::move(A);
  bp.b = bp.A * zbar + out.noise;
  bp.tol = cfg.bp_tol;
  bp.max_iter = cfg.bp_max_iter;
  const auto sol = solve_basis_pursuit(bp);
  out.meta["bp_iterations"] = sol.iterations;
  const double znorm = sol.z.norm();
  out.meta["decoded_norm"] = znorm;
  out.estimate = znorm <= 2.0 * L ? sol.z : Vector::Zero(di);
  return out;
}

}  // namespace sparsedp
