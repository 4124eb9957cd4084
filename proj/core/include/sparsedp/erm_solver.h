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

#ifndef SPARSEDP_ERM_SOLVER_H_
#define SPARSEDP_ERM_SOLVER_H_

#include <optional>

#include "sparsedp/dataset.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"

namespace sparsedp {

struct ErmSolverOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  std::optional<Vector> x0;
};

struct ErmSolution {
  Vector x;
  double objective = 0.0;
  // ||grad|| when unconstrained, otherwise the norm of the gradient mapping
  // L_k (x - P(x - grad / L_k)) at the final step size.
  double residual = 0.0;
  int iterations = 0;
};

// Minimizes F_S(x) + (lambda/2) ||x||^2 over X by accelerated projected
// gradient with backtracking and adaptive restart. Throws ConvergenceError
// with the final residual when max_iter is reached.
ErmSolution solve_erm(const LossModel& loss, const Dataset& S,
                      const FeasibleSet& X, double lambda,
                      const ErmSolverOptions& opts = {});

// The regularized problem with lambda > 0.
inline ErmSolution solve_regularized_erm(const Dataset& S, double lambda,
                                         const LossModel& loss,
                                         const FeasibleSet& X, double tol) {
  ErmSolverOptions o;
  o.tol = tol;
  return solve_erm(loss, S, X, lambda, o);
}

}  // namespace sparsedp

#endif  // SPARSEDP_ERM_SOLVER_H_
