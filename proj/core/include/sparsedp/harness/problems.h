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

#ifndef SPARSEDP_HARNESS_PROBLEMS_H_
#define SPARSEDP_HARNESS_PROBLEMS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparsedp/dataset.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"
#include "sparsedp/rng.h"

namespace sparsedp::harness {

enum class ProblemKind {
  kLinear,              // f = <x, z> over the unit l2 ball
  kSparseLeastSquares,  // f = 0.5 (<x, z> - y)^2, labels from a planted x
  kEmbeddingToy,        // f = 0.5 sum_{j in supp z} (x_j - z_j)^2
  kNonconvexSmooth,     // f = sigmoid(-y <x, z>), unconstrained
};
ProblemKind ParseProblemKind(const std::string& s);
std::string ToString(ProblemKind k);

struct ProblemOptions {
  double radius = 1.0;          // of the feasible l2 ball
  double planted_norm = 0.5;    // ||x_planted|| for least squares
  // Coordinate j is drawn into a support with weight (j+1)^-popularity, so
  // low coordinates are "hot" as in embedding tables. Default 1 for least
  // squares, 0 (uniform supports) otherwise.
  std::optional<double> popularity;
  // Least squares: the planted vector lives on the first planted_support
  // (hottest) coordinates. Default s; 0 means dense.
  std::optional<std::size_t> planted_support;
  double label_flip = 0.1;      // nonconvex kind: label noise rate
  bool solve = true;            // compute x_star when no closed form exists
  double solver_tol = 1e-10;
};

struct Problem {
  ProblemKind kind = ProblemKind::kLinear;
  Dataset S;
  std::unique_ptr<LossModel> loss;
  FeasibleSet X;
  Vector x0;
  // A minimizer of F_S over X with its value and the certificate: the norm
  // of the gradient mapping at x_star (0 for closed forms). Empty for the
  // nonconvex kind.
  std::optional<Vector> x_star;
  double f_star = 0.0;
  double certificate = 0.0;
  std::optional<Vector> planted;
};

// Points have s distinct coordinates with values +-1/sqrt(s), so
// ||z||_2 = 1 and L bounds follow from the loss. The loss constants are set
// exactly as documented in problems.cc.
Problem make_problem(ProblemKind kind, std::size_t d, std::size_t s,
                     std::size_t n, RngStream& rng,
                     const ProblemOptions& opts = {});

// A random s-sparse unit vector with +-1/sqrt(s) entries on a uniformly
// random support.
SparseVector random_sparse_sign_vector(std::size_t d, std::size_t s,
                                       RngStream& rng);

// Draws s distinct coordinates, each new one with probability proportional
// to (j+1)^-exponent among those not yet drawn.
std::vector<std::size_t> popular_support(std::size_t d, std::size_t s,
                                         double exponent, RngStream& rng);

struct ConstantCheck {
  double max_grad_norm = 0.0;   // over sampled x in X and data points
  double max_curvature = 0.0;   // finite-difference directional curvature
  double max_range = 0.0;       // max f - min f over the samples
  bool consistent = false;      // all within 1% of the declared constants
};

// Samples points of X (a ball of radius 2 for the unconstrained kind) and
// compares the observed gradient norms, curvature and loss range with L, H
// and B.
ConstantCheck check_declared_constants(const Problem& p, RngStream& rng,
                                       std::size_t samples = 2000);

}  // namespace sparsedp::harness

#endif  // SPARSEDP_HARNESS_PROBLEMS_H_
