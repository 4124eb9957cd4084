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

#ifndef SPARSEDP_BIAS_REDUCTION_H_
#define SPARSEDP_BIAS_REDUCTION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "sparsedp/dataset.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"
#include "sparsedp/mean_estimation.h"
#include "sparsedp/rng.h"

namespace sparsedp {

// Which private mean estimator the gradient oracle uses.
enum class MechanismKind {
  kGaussianRecovery,  // gaussian_l1_recovery
  kProjection,        // projection_mechanism
  kNoiseless,         // test hook: exact means, no noise, no projection
};

MechanismKind ParseMechanismKind(const std::string& s);
std::string ToString(MechanismKind k);

struct MeanMechanism {
  MechanismKind kind = MechanismKind::kGaussianRecovery;
  ProjectionMechanismOptions projection;
  RecoveryConfig recovery;
};

// Private estimate of the mean `mean` of a batch of n points whose gradients
// are s-sparse with l2 norm at most L.
MechanismOutput estimate_mean(const MeanMechanism& mech, const Vector& mean,
                              const PrivacyParams& pp, std::size_t n, double L,
                              std::size_t s, RngStream& rng);

// floor(log2 n) - 1; requires n >= 2.
int truncation_level(std::size_t n);

struct BatchDraw {
  int N = 0;
  std::vector<std::size_t> B;  // size 2^(N+1)
  std::vector<std::size_t> O;  // first half of B
  std::vector<std::size_t> E;  // second half of B
  std::size_t I = 0;
};

// N ~ TGeom(M), then B by partial shuffle of [0, n), then I uniform.
BatchDraw sample_batches(std::size_t n, int M, RngStream& rng);
// Same, with N fixed by the caller.
BatchDraw sample_batches_given(std::size_t n, int N, RngStream& rng);

struct GradientEstimate {
  Vector g;
  BatchDraw draw;
  double p_N = 0.0;
  MechanismOutput plus;     // on grad F_B, batch size 2^(N+1)
  MechanismOutput minus_o;  // on grad F_O, batch size 2^N
  MechanismOutput minus_e;  // on grad F_E, batch size 2^N
  MechanismOutput single;   // on grad f(x, z_I), batch size 1
  double eps_consumed = 0.0;
  double delta_consumed = 0.0;
};

// g = (1/p_N) (G+_B - (G-_O + G-_E) / 2) + G_I, each term a call to the mean
// mechanism at (pp.eps / 4, pp.delta / 4). Call k in {B, O, E, I} uses
// rng.Substream(k), which leaves rng untouched, so pass a fresh stream per call.
//
// The consumed budget is what subsampling amplification gives for this draw:
// each of the three batch terms is sampled with rate 2^(N+1)/n and the single
// term with rate 1/n, so the step costs (3 * 2^(N+1) + 1) * 2 eps_sub / n and
// (3 * 2^(N+1) + 1) * delta_sub / n with (eps_sub, delta_sub) = pp / 4. For
// pp = (eps/8, delta/4) this is step_cost(N, eps, delta, n).
GradientEstimate bias_reduced_gradient(const Vector& x, const Dataset& S,
                                       const BatchDraw& draw,
                                       const PrivacyParams& pp,
                                       const LossModel& loss,
                                       const MeanMechanism& mech,
                                       RngStream& rng);

}  // namespace sparsedp

#endif  // SPARSEDP_BIAS_REDUCTION_H_
