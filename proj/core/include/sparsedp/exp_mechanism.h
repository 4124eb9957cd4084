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

#ifndef SPARSEDP_EXP_MECHANISM_H_
#define SPARSEDP_EXP_MECHANISM_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sparsedp/dataset.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"
#include "sparsedp/rng.h"

namespace sparsedp {

struct TauOptions {
  // Solve tau^3 / ln(d/(tau beta)) = L sqrt(s) eps n / B as printed instead
  // of the balancing equation with the reciprocal right-hand side.
  bool literal = false;
  double lo = 1e-6;
  double hi = 1.0;
  int iterations = 200;
};

struct TauSolution {
  double tau = 0.0;
  double target = 0.0;
  bool clamped = false;  // target fell outside the bracket
};

// Bisection for tau^3 / ln(d/(tau beta)) = target. By default the target is
// B / (L sqrt(s) eps n), which balances the sampling error
// B ln(d/(tau beta)) / (eps n tau^2) against the sparsification error
// L sqrt(s) tau.
TauSolution solve_tau(double L, std::size_t s, std::size_t d, double B,
                      double eps, std::size_t n, double beta,
                      const TauOptions& opts = {});

struct NetPoint {
  std::vector<std::size_t> support;  // nonzero coordinates, increasing
  std::vector<double> values;        // the nonzero values, same order
  Vector point;
};

struct NetOptions {
  std::size_t cap = 200000;
  // Support size; default min(ceil(1/tau^2), d).
  std::optional<std::size_t> support_size;
};

struct SparseNet {
  std::vector<NetPoint> points;
  std::size_t support_size = 0;
  double spacing = 0.0;  // grid step tau / sqrt(k)
  // |net| <= C(d, k) (3/tau)^k.
  bool within_size_bound = false;
};

// Number of net points, computed without enumerating them.
double sparse_net_size(const FeasibleSet& X, double tau, std::size_t d,
                       const NetOptions& opts = {});

// Every point of X with at most k nonzeros, rounded toward zero onto the
// grid of spacing tau/sqrt(k) on its support. Rounding toward zero keeps
// points inside X (the sets here are symmetric, or boxes containing 0), and
// moves any k-sparse point of X by less than tau in l2, so the result is a
// tau-net of the k-sparse part of X. Distinct supports give distinct points
// because zero is excluded from the per-coordinate values.
//
// X must be bounded and contain the origin. When tau >= sup ||x||_2 over X
// the net is {0}. Throws CapacityError when the size would exceed the cap.
SparseNet build_sparse_net(const FeasibleSet& X, double tau, std::size_t d,
                           const NetOptions& opts = {});

struct ExpMechanismOptions {
  std::size_t cap = 200000;
  std::optional<double> tau;  // skip solve_tau
  std::optional<std::size_t> support_size;
  TauOptions tau_options;
  // Weight exp(-(B/(eps n)) F) instead of exp(-eps n F / (2B)).
  bool literal_weight = false;
};

struct ExpMechanismResult {
  Vector x;
  std::size_t index = 0;
  double tau = 0.0;
  std::size_t support_size = 0;
  SparseNet net;
  std::vector<double> objective;      // F_S at each net point
  std::vector<double> probabilities;  // exact sampling distribution
};

// Exact normalized probabilities proportional to exp(log_weights), computed
// with the log-sum-exp shift.
std::vector<double> normalized_exp_weights(const std::vector<double>& log_weights);

// Samples one net point with probability proportional to
// exp(-eps n F_S(x) / (2B)). B comes from the loss constants.
ExpMechanismResult sparse_exp_mechanism(const Dataset& S, double eps,
                                        double beta, const LossModel& loss,
                                        const FeasibleSet& X, RngStream& rng,
                                        const ExpMechanismOptions& opts = {});

}  // namespace sparsedp

#endif  // SPARSEDP_EXP_MECHANISM_H_
