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

#ifndef SPARSEDP_PATHWISE_H_
#define SPARSEDP_PATHWISE_H_

#include <optional>

#include "sparsedp/dataset.h"
#include "sparsedp/loss.h"
#include "sparsedp/sgd.h"

namespace sparsedp {

// Largest deviation between a stored x^{t+1} and P_X(x^t - eta G(x^t)).
double max_reconstruction_error(const RunTrace& trace);

// Throws InternalConsistencyError if some stored step deviates by more than
// 1e-12 (relative to max(1, ||x^{t+1}||)) from its recomputation.
void check_step_reconstruction(const RunTrace& trace);

struct PathwiseResult {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  // rhs - lhs; negative when violated.
  double slack = 0.0;
  // Sum of the absolute values of all terms; the 1e-7 tolerance is relative
  // to this.
  double scale = 0.0;
};

// Convex regret inequality, which holds on every path of projected SGD with
// any oracle:
//   sum_{t<=T} [F(x^t) - F(x*)]
//     <= ||x^0 - x*||^2 / (2 eta)
//        + sum_{t<=T} [ (eta/2) ||G_t||^2 + <grad F(x^t) - G_t, x^t - x*> ].
// x_star may be any point of X. Checks step reconstruction first.
PathwiseResult check_pathwise_regret(const RunTrace& trace,
                                     const LossModel& loss, const Dataset& S,
                                     const Vector& x_star);

struct StationarityResult {
  // Gamma replaced by the realized F(x^0) - F(x^{T+1}). Used for pass/fail.
  PathwiseResult realized;
  // With the declared Gamma of the loss, when one is declared.
  std::optional<PathwiseResult> declared;
};

// Smooth descent inequality for unconstrained steps with 0 < eta <= 1/(2H):
//   sum_{t<=T} ||grad F(x^t)||^2
//     <= Gamma / eta + (eta H / 2) sum ||G_t||^2
//        - sum <grad F(x^t), G_t - grad F(x^t)>.
// Throws InvalidArgument for a constrained trace, a missing H, or eta > 1/(2H).
StationarityResult check_pathwise_stationarity(const RunTrace& trace,
                                               const LossModel& loss,
                                               const Dataset& S);

}  // namespace sparsedp

#endif  // SPARSEDP_PATHWISE_H_
