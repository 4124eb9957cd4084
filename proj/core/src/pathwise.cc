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

#include "sparsedp/pathwise.h"

#include <algorithm>
#include <cmath>

#include "sparsedp/error.h"

namespace sparsedp {
namespace {

constexpr double kRelSlack = 1e-7;

void RequireFullTrace(const RunTrace& trace) {
  if (trace.iterates.size() != trace.T + 2 ||
      trace.gradients.size() != trace.T + 1) {
    throw InvalidArgument(
        "pathwise check: trace was not recorded or is incomplete");
  }
}

PathwiseResult Compare(double lhs, double rhs, double scale) {
  PathwiseResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.scale = scale;
  r.holds = lhs <= rhs + kRelSlack * std::max(1.0, scale);
  return r;
}

}  // namespace

double max_reconstruction_error(const RunTrace& trace) {
  RequireFullTrace(trace);
  double worst = 0.0;
  for (std::size_t t = 0; t <= trace.T; ++t) {
    const Vector expect = project_euclidean(
        trace.X, trace.iterates[t] - trace.eta * trace.gradients[t]);
    const double err = (expect - trace.iterates[t + 1]).lpNorm<Eigen::Infinity>() /
                       std::max(1.0, trace.iterates[t + 1].lpNorm<Eigen::Infinity>());
    worst = std::max(worst, err);
  }
  return worst;
}

void check_step_reconstruction(const RunTrace& trace) {
  const double err = max_reconstruction_error(trace);
  if (!(err <= 1e-12)) {
    throw InternalConsistencyError(
        "trace: stored iterate is not the projected step of its predecessor");
  }
}

PathwiseResult check_pathwise_regret(const RunTrace& trace,
                                     const LossModel& loss, const Dataset& S,
                                     const Vector& x_star) {
  check_step_reconstruction(trace);
  SPARSEDP_REQUIRE(trace.eta > 0, "check_pathwise_regret: eta must be positive");
  const double f_star = empirical_risk(loss, S, x_star);
  double lhs = 0.0;
  double rhs = (trace.iterates[0] - x_star).squaredNorm() / (2 * trace.eta);
  double scale = std::abs(rhs);
  for (std::size_t t = 0; t <= trace.T; ++t) {
    const Vector& x = trace.iterates[t];
    const Vector& g = trace.gradients[t];
    const double gap = empirical_risk(loss, S, x) - f_star;
    const double sq = 0.5 * trace.eta * g.squaredNorm();
    const double cross = (empirical_gradient(loss, S, x) - g).dot(x - x_star);
    lhs += gap;
    rhs += sq + cross;
    scale += std::abs(gap) + std::abs(sq) + std::abs(cross);
  }
  return Compare(lhs, rhs, scale);
}

StationarityResult check_pathwise_stationarity(const RunTrace& trace,
                                               const LossModel& loss,
                                               const Dataset& S) {
  SPARSEDP_REQUIRE(is_unconstrained(trace.X),
                   "check_pathwise_stationarity: requires unconstrained steps");
  const auto H = loss.constants().H;
  SPARSEDP_REQUIRE(H.has_value() && *H > 0,
                   "check_pathwise_stationarity: loss must declare H");
  SPARSEDP_REQUIRE(trace.eta > 0 && trace.eta <= 1.0 / (2.0 * *H),
                   "check_pathwise_stationarity: requires 0 < eta <= 1/(2H)");
  check_step_reconstruction(trace);

  double lhs = 0.0;
  double noise_sq = 0.0;
  double cross = 0.0;
  double scale = 0.0;
  for (std::size_t t = 0; t <= trace.T; ++t) {
    const Vector grad = empirical_gradient(loss, S, trace.iterates[t]);
    const Vector& g = trace.gradients[t];
    const double gn = grad.squaredNorm();
    const double q = 0.5 * trace.eta * *H * g.squaredNorm();
    const double c = grad.dot(g - grad);
    lhs += gn;
    noise_sq += q;
    cross += c;
    scale += gn + q + std::abs(c);
  }
  const double gap = empirical_risk(loss, S, trace.iterates.front()) -
                     empirical_risk(loss, S, trace.iterates.back());
  StationarityResult res;
  res.realized = Compare(lhs, gap / trace.eta + noise_sq - cross,
                         scale + std::abs(gap) / trace.eta);
  if (const auto G = loss.constants().Gamma) {
    res.declared = Compare(lhs, *G / trace.eta + noise_sq - cross,
                           scale + std::abs(*G) / trace.eta);
  }
  return res;
}

}  // namespace sparsedp
