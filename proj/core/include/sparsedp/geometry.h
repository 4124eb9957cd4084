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

#ifndef SPARSEDP_GEOMETRY_H_
#define SPARSEDP_GEOMETRY_H_

#include "sparsedp/feasible_set.h"
#include "sparsedp/sparse_vector.h"

namespace sparsedp {

struct ProjectionResult {
  Vector point;
  // Distance from the input to point: l2 for the Euclidean projections,
  // l-infinity for project_linf.
  double objective = 0.0;
  // False iff the input was already feasible and is returned unchanged.
  bool active = false;
};

// Euclidean projection onto {x : ||x||_1 <= radius}, by sorting magnitudes
// and soft-thresholding at the KKT level. O(d log d).
ProjectionResult project_l1_ball(const Vector& v, double radius);

ProjectionResult project_l2_ball(const Vector& v, double radius);

struct LinfProjectionOptions {
  int max_iter = 60;
  // Stop once the bracket is narrower than rel_gap * ||v||_inf.
  double rel_gap = 1e-12;
};

// A minimizer of ||x - v||_inf over X. For the ball variants the minimizer
// set is usually not a singleton; the one returned is soft_threshold(v, t*)
// with t* the optimal l-infinity radius, which is the minimizer of least l2
// norm. Bisection over t; throws ConvergenceError if the bracket does not
// close within max_iter.
ProjectionResult project_linf(const FeasibleSet& X, const Vector& v,
                              const LinfProjectionOptions& opts = {});

// sign(v_j) * max(|v_j| - t, 0).
Vector soft_threshold(const Vector& v, double t);

// Keeps x_j when |x_j| >= tau, zeroes it otherwise.
Vector sparsify_threshold(const Vector& x, double tau);

}  // namespace sparsedp

#endif  // SPARSEDP_GEOMETRY_H_
