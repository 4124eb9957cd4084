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

#ifndef SPARSEDP_MEAN_ESTIMATION_H_
#define SPARSEDP_MEAN_ESTIMATION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsedp/feasible_set.h"
#include "sparsedp/rng.h"
#include "sparsedp/sparse_vector.h"

namespace sparsedp {

enum class MechanismBranch { kLaplace, kGaussian, kGaussianDirect, kCompressedSensing };
std::string ToString(MechanismBranch b);

struct MechanismOutput {
  Vector estimate;
  // Noise actually added to the mean (for the compressed-sensing branch, the
  // measurement noise), and its l-infinity norm.
  Vector noise;
  double noise_linf = 0.0;
  MechanismBranch branch = MechanismBranch::kLaplace;
  std::map<std::string, double> meta;
  std::vector<std::string> warnings;
};

// 2 L sqrt(s) / n and 2 L / n: how far one replaced point can move the mean of
// n points in S_s^d, in l1 and l2.
double l1_sensitivity(double L, std::size_t s, std::size_t n);
double l2_sensitivity(double L, std::size_t n);

// Laplace scale for delta = 0 and Gaussian standard deviation for delta > 0.
double projection_laplace_scale(double L, std::size_t s, std::size_t n,
                                double eps);
double gaussian_sigma(double L, std::size_t n, const PrivacyParams& pp);

struct ProjectionMechanismOptions {
  bool zero_noise = false;          // test hook: xi = 0
  bool disable_projection = false;  // test hook: return zbar + xi
};

// zbar + xi projected onto the l1 ball of radius L sqrt(s). Laplace noise
// when delta = 0, Gaussian otherwise. The almost-sure bound
// ||zhat - zbar||_2 <= sqrt(2 L sqrt(s) ||xi||_inf) is checked before
// returning; a violation beyond 1e-7 throws InternalConsistencyError.
// zbar must itself lie in that ball (it does for the mean of valid data).
MechanismOutput projection_mechanism(const Vector& zbar,
                                     const PrivacyParams& pp, std::size_t n,
                                     double L, std::size_t s, RngStream& rng,
                                     const ProjectionMechanismOptions& opts = {});

struct RecoveryConfig {
  double c_m = 1.0;
  std::optional<std::size_t> m_override;
  double bp_tol = 1e-8;
  int bp_max_iter = 10000;
  // Below c_rip * s ln(d/s) measurements a warning is attached to the output.
  double c_rip = 16.0;
  bool zero_measurement_noise = false;  // test hook
  bool force_compressed_sensing = false;  // test hook: skip the direct branch
};

// m = max(1, ceil(c_m * n eps sqrt(s ln(d/s) / ln(1/delta)))).
std::size_t recovery_measurements(std::size_t n, const PrivacyParams& pp,
                                  std::size_t s, std::size_t d,
                                  const RecoveryConfig& cfg);
// True when the direct Gaussian branch is taken: m >= d or d < m ln^2 max(m,2).
bool recovery_uses_direct_branch(std::size_t m, std::size_t d);

// Gaussian measurements A zbar + noise with A_ij ~ N(0, 1/m), decoded by basis
// pursuit and zeroed if the decoded norm exceeds 2L. Falls back to the plain
// Gaussian mechanism in the low-dimensional regime. Requires delta > 0,
// 0 < eps <= 1 and d >= 2s.
MechanismOutput gaussian_l1_recovery(const Vector& zbar,
                                     const PrivacyParams& pp, std::size_t n,
                                     double L, std::size_t s, std::size_t d,
                                     const RecoveryConfig& cfg, RngStream& rng);

}  // namespace sparsedp

#endif  // SPARSEDP_MEAN_ESTIMATION_H_
