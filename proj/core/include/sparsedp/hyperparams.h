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

#ifndef SPARSEDP_HYPERPARAMS_H_
#define SPARSEDP_HYPERPARAMS_H_

#include <cstddef>

#include "sparsedp/calibrated_constants.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"
#include "sparsedp/sgd.h"

namespace sparsedp {

// Absolute constants in the step size and utility formulas.
struct HyperConstants {
  double c_b = 1.0;   // bias scale
  double c_nu = 1.0;  // second-moment scale
  double C = calibrated::kUtilityC;
  double C_prime = calibrated::kStoppingCPrime;
};

struct Hyperparams {
  double eta = 0.0;
  double tau = 0.0;  // nominal run length C' n / ln(2/delta)
  double U = 0.0;    // utility bound; success means excess risk <= U / tau
  double b = 0.0;    // oracle bias bound
  double nu2 = 0.0;  // oracle second-moment bound
};

// b   = c_b L (s ln(d/s) ln(1/delta))^(1/4) / sqrt(n eps)
// nu2 = c_nu L^2 ln(n) sqrt(s ln(d/s) ln(1/delta)) / eps
// tau = C' n / ln(2/delta)
// convex:    eta = D / (nu sqrt(tau)),         U = C D (nu sqrt(tau) + b tau)
// nonconvex: eta = sqrt(Gamma / (H tau nu2)),  U = C (sqrt(Gamma H tau) nu + L tau b)
// Throws InvalidArgument when D (convex) or Gamma, H (nonconvex) are missing.
Hyperparams recommended_hyperparams(const LossModel& loss, std::size_t n,
                                    const PrivacyParams& pp, Mode mode,
                                    const HyperConstants& k = {});

}  // namespace sparsedp

#endif  // SPARSEDP_HYPERPARAMS_H_
