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

#include "sparsedp/geometry.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sparsedp/error.h"
#include "overloaded.h"

namespace sparsedp {

using internal::Overloaded;

ProjectionResult project_l1_ball(const Vector& v, double radius) {
  SPARSEDP_REQUIRE(radius > 0, "project_l1_ball: radius must be positive");
  if (!v.allFinite()) throw InvalidArgument("project_l1_ball: non-finite input");
  const double l1 = v.lpNorm<1>();
  if (l1 <= radius) return {v, 0.0, false};

  std::vector<double> mag(static_cast<std::size_t>(v.size()));
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    mag[static_cast<std::size_t>(j)] = std::abs(v[j]);
  }
  std::sort(mag.begin(), mag.end(), std::greater<>());
  // theta = (sum_{k<rho} mag_k - radius) / rho for the largest rho with
  // mag_{rho-1} > theta.
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    cumsum += mag[k];
    const double candidate = (cumsum - radius) / static_cast<double>(k + 1);
    if (mag[k] > candidate) {
      theta = candidate;
    } else {
      break;
    }
  }
  ProjectionResult r;
  r.point = soft_threshold(v, std::max(theta, 0.0));
  r.objective = (r.point - v).norm();
  r.active = true;
  return r;
}

ProjectionResult project_l2_ball(const Vector& v, double radius) {
  SPARSEDP_REQUIRE(radius > 0, "project_l2_ball: radius must be positive");
  const double nrm = v.norm();
  if (nrm <= radius) return {v, 0.0, false};
  ProjectionResult r;
  r.point = v * (radius / nrm);
  r.objective = nrm - radius;
  r.active = true;
  return r;
}

namespace {

template <class Feasible>
ProjectionResult BisectLinf(const Vector& v, Feasible feasible,
                            const LinfProjectionOptions& opts) {
  const double vmax = v.lpNorm<Eigen::Infinity>();
  double lo = 0.0;
  double hi = vmax;  // soft_threshold(v, vmax) = 0 is always feasible
  int it = 0;
  while (hi - lo > opts.rel_gap * vmax) {
    if (it == opts.max_iter) {
      throw ConvergenceError("project_linf: bisection did not converge",
                             hi - lo);
    }
    const double mid = 0.5 * (lo + hi);
    if (feasible(soft_threshold(v, mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++it;
  }
  ProjectionResult r;
  r.point = soft_threshold(v, hi);
  r.objective = (r.point - v).lpNorm<Eigen::Infinity>();
  r.active = true;
  return r;
}

}  // namespace

ProjectionResult project_linf(const FeasibleSet& X, const Vector& v,
                              const LinfProjectionOptions& opts) {
  if (!v.allFinite()) throw InvalidArgument("project_linf: non-finite input");
  validate_feasible_set(X);
  return std::visit(
      Overloaded{
          [&](const Unconstrained&) -> ProjectionResult {
            return {v, 0.0, false};
          },
          [&](const Box& b) -> ProjectionResult {
            SPARSEDP_REQUIRE(b.lo.size() == v.size(),
                             "project_linf: dimension mismatch");
            ProjectionResult r;
            r.point = v.cwiseMax(b.lo).cwiseMin(b.hi);
            r.objective = (r.point - v).lpNorm<Eigen::Infinity>();
            r.active = r.objective > 0.0;
            return r;
          },
          [&](const L2Ball& b) -> ProjectionResult {
            if (v.norm() <= b.radius) return {v, 0.0, false};
            return BisectLinf(
                v, [&](const Vector& x) { return x.norm() <= b.radius; },
                opts);
          },
          [&](const L1Ball& b) -> ProjectionResult {
            if (v.lpNorm<1>() <= b.radius) return {v, 0.0, false};
            return BisectLinf(
                v,
                [&](const Vector& x) { return x.lpNorm<1>() <= b.radius; },
                opts);
          },
      },
      X);
}

Vector soft_threshold(const Vector& v, double t) {
  SPARSEDP_REQUIRE(t >= 0, "soft_threshold: t must be nonnegative");
  Vector out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v[j]) - t;
    out[j] = a > 0 ? std::copysign(a, v[j]) : 0.0;
  }
  return out;
}

Vector sparsify_threshold(const Vector& x, double tau) {
  SPARSEDP_REQUIRE(tau > 0, "sparsify_threshold: tau must be positive");
  Vector out = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (std::abs(x[j]) < tau) out[j] = 0.0;
  }
  return out;
}

}  // namespace sparsedp
