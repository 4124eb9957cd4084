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

#ifndef SPARSEDP_BASIS_PURSUIT_H_
#define SPARSEDP_BASIS_PURSUIT_H_

#include "sparsedp/sparse_vector.h"

namespace sparsedp {

// min ||z||_1 subject to A z = b, with A of full row rank and m <= d.
struct BasisPursuitProblem {
  Matrix A;
  Vector b;
  double tol = 1e-8;
  int max_iter = 10000;
  double rho = 1.0;  // initial ADMM penalty; adapted by residual balancing
};

struct BasisPursuitResult {
  Vector z;
  int iterations = 0;
  double primal_residual = 0.0;  // ||x - z||
  double dual_residual = 0.0;    // rho ||z - z_prev||
  double constraint_residual = 0.0;  // ||A z - b||
};

// ADMM on the split  min ||z||_1 + indicator{A x = b}  s.t. x = z.
// The x-update is the affine projection through a Cholesky factor of A A^T,
// the z-update is soft-thresholding. Stops when the primal, dual and
// constraint residuals are all below tol (relative to the problem scale);
// throws ConvergenceError carrying the residuals otherwise.
BasisPursuitResult solve_basis_pursuit(const BasisPursuitProblem& p);

inline Vector basis_pursuit(const BasisPursuitProblem& p) {
  return solve_basis_pursuit(p).z;
}

}  // namespace sparsedp

#endif  // SPARSEDP_BASIS_PURSUIT_H_
