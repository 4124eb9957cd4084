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

#ifndef SPARSEDP_OUTPUT_PERTURBATION_H_
#define SPARSEDP_OUTPUT_PERTURBATION_H_

#include <cstddef>
#include <string>

#include "sparsedp/dataset.h"
#include "sparsedp/erm_solver.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"
#include "sparsedp/rng.h"

namespace sparsedp {

struct OutputPerturbationOptions {
  double solver_tol = 1e-10;
  int solver_max_iter = 100000;
  bool zero_noise = false;  // test hook
};

struct OutputPerturbationResult {
  Vector x_hat;
  Vector x_star;  // the regularized minimizer
  Vector noise;
  double noise_linf = 0.0;
  double scale = 0.0;  // Laplace scale or Gaussian sigma
  bool gaussian = false;
  double solver_residual = 0.0;
};

// Noise scale for the regularized minimizer.
//   delta = 0: Laplace, 2 sqrt(2s) L / (lambda eps n) * (2H/lambda + 1)
//   delta > 0: Gaussian, sigma^2 = 8 L^2 ln(1.25/delta) / (lambda eps n)^2
double output_perturbation_scale(const LossModel& loss, std::size_t n,
                                 const PrivacyParams& pp, double lambda);

// Solves min F_S + (lambda/2)||x||^2 over X, adds noise, and maps back into X
// with the l-infinity projection. The pure branch needs a declared H and an
// unconstrained X. Checks ||x_hat - x_star||_inf <= 2 ||noise||_inf.
OutputPerturbationResult output_perturbation(
    const Dataset& S, const PrivacyParams& pp, double lambda,
    const LossModel& loss, const FeasibleSet& X, RngStream& rng,
    const OutputPerturbationOptions& opts = {});

enum class LambdaRegime { kErmPure, kErmApprox, kScoPure, kScoApprox };
LambdaRegime ParseLambdaRegime(const std::string& s);

// erm-pure, sco-pure: (L^2 H / D^2 * s ln(d/beta) / (eps n))^(1/3)
// erm-approx:         L/D * (s ln(1/delta) ln(d/beta))^(1/4) / sqrt(eps n)
// sco-approx:         L/D * (ln(n) ln(1/beta) / n
//                            + sqrt(s ln(1/delta) ln(d/beta)) / (eps n))^(1/2)
double lambda_recommend(const LossModel& loss, std::size_t n,
                        const PrivacyParams& pp, double beta,
                        LambdaRegime regime);

}  // namespace sparsedp

#endif  // SPARSEDP_OUTPUT_PERTURBATION_H_
