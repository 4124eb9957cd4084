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

#include "sparsedp/erm_solver.h"

#include <cmath>

#include "sparsedp/error.h"

namespace sparsedp {

ErmSolution solve_erm(const LossModel& loss, const Dataset& S,
                      const FeasibleSet& X, double lambda,
                      const ErmSolverOptions& opts) {
  validate_feasible_set(X);
  SPARSEDP_REQUIRE(lambda >= 0, "solve_erm: lambda must be nonnegative");
  SPARSEDP_REQUIRE(opts.tol > 0, "solve_erm: tol must be positive");
  const auto d = static_cast<Eigen::Index>(S.bounds.d);
  const bool unconstrained = is_unconstrained(X);

  const auto grad = [&](const Vector& x) -> Vector {
    return empirical_gradient(loss, S, x) + lambda * x;
  };
  const auto value = [&](const Vector& x) {
    return empirical_risk(loss, S, x) + 0.5 * lambda * x.squaredNorm();
  };

  Vector x = opts.x0 ? project_euclidean(X, *opts.x0) : Vector(Vector::Zero(d));
  SPARSEDP_REQUIRE(x.size() == d, "solve_erm: x0 has wrong dimension");
  Vector y = x;
  double Lk = loss.constants().H.value_or(1.0) + lambda;
  if (!(Lk > 0)) Lk = 1.0;
  double tk = 1.0;
  double fx = value(x);

  ErmSolution sol;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const Vector gy = grad(y);
    Vector x_new;
    Vector step;
    while (true) {
      x_new = project_euclidean(X, y - gy / Lk);
      step = x_new - y;
      const double s2 = step.squaredNorm();
      if (s2 == 0.0) break;
      // Lipschitz test on the gradient; more robust near the optimum than
      // comparing objective values.
      const double curv = (grad(x_new) - gy).dot(step);
      if (curv <= Lk * s2 * (1 + 1e-12)) break;
      Lk *= 2;
    }
    const double residual = unconstrained ? gy.norm() : Lk * step.norm();
    sol.iterations = it;
    sol.residual = residual;
    if (residual <= opts.tol) {
      sol.x = unconstrained ? y : x_new;
      sol.objective = value(sol.x);
      return sol;
    }
    const double f_new = value(x_new);
    if (f_new > fx) {
      // Restart the momentum.
      tk = 1.0;
      y = x_new;
    } else {
      const double t_next = 0.5 * (1 + std::sqrt(1 + 4 * tk * tk));
      y = x_new + ((tk - 1) / t_next) * (x_new - x);
      tk = t_next;
    }
    x = x_new;
    fx = f_new;
  }
  throw ConvergenceError("solve_erm: iteration limit reached", sol.residual);
}

}  // namespace sparsedp
