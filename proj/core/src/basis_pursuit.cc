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

#include "sparsedp/basis_pursuit.h"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>
#include <vector>

#include "sparsedp/error.h"
#include "sparsedp/geometry.h"

namespace sparsedp {
namespace {

constexpr int kBalancingIterations = 500;
constexpr int kCertifyEvery = 25;

// Relative duality gap between a primal point w and a dual y, after scaling y
// into the dual feasible set {y : ||A^T y||_inf <= 1}.
double RelativeGap(const Matrix& A, const Vector& b, const Vector& w, Vector y) {
  const double inf = (A.transpose() * y).lpNorm<Eigen::Infinity>();
  if (!std::isfinite(inf)) return INFINITY;
  if (inf > 1.0) y /= inf;
  const double primal = w.lpNorm<1>();
  return (primal - b.dot(y)) / (1.0 + primal);
}

// Exact solution of A_T w_T = b on the largest entries of x, with the dual
// that makes sign(w_T) tight on T. Either may fail to be optimal; the caller
// checks the gap.
std::pair<Vector, Vector> PolishOnSupport(const Matrix& A, const Vector& b,
                                          const Vector& x) {
  const auto m = A.rows();
  std::vector<Eigen::Index> idx(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) idx[j] = j;
  const auto k = std::min<Eigen::Index>(m, x.size());
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](auto a, auto c) {
    return std::abs(x[a]) > std::abs(x[c]);
  });
  const double floor = 1e-9 * x.lpNorm<Eigen::Infinity>();
  std::vector<Eigen::Index> T;
  for (Eigen::Index i = 0; i < k && std::abs(x[idx[i]]) > floor; ++i) T.push_back(idx[i]);
  if (T.empty()) return {Vector::Zero(x.size()), Vector::Zero(m)};
  Matrix AT(m, static_cast<Eigen::Index>(T.size()));
  for (std::size_t i = 0; i < T.size(); ++i) AT.col(i) = A.col(T[i]);
  const Vector wT = AT.colPivHouseholderQr().solve(b);
  Vector w = Vector::Zero(x.size());
  Vector sign(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    w[T[i]] = wT[i];
    sign[i] = wT[i] >= 0 ? 1.0 : -1.0;
  }
  const Matrix ATt = AT.transpose();
  const Vector y = ATt.completeOrthogonalDecomposition().solve(sign);
  return {w, y};
}

}  // namespace

BasisPursuitResult solve_basis_pursuit(const BasisPursuitProblem& p) {
  const auto m = p.A.rows();
  const auto d = p.A.cols();
  SPARSEDP_REQUIRE(m >= 1 && m <= d, "basis_pursuit: need 1 <= m <= d");
  SPARSEDP_REQUIRE(p.b.size() == m, "basis_pursuit: b has wrong length");
  SPARSEDP_REQUIRE(p.tol > 0, "basis_pursuit: tol must be positive");
  SPARSEDP_REQUIRE(p.max_iter > 0, "basis_pursuit: max_iter must be positive");
  SPARSEDP_REQUIRE(p.A.allFinite() && p.b.allFinite(),
                   "basis_pursuit: non-finite input");

  const Eigen::LLT<Matrix> chol(p.A * p.A.transpose());
  if (chol.info() != Eigen::Success) {
    throw InvalidArgument("basis_pursuit: A is not of full row rank");
  }
  // Affine projection onto {x : A x = b}:  x = v - A^T (A A^T)^{-1} (A v - b).
  const Matrix pinv = chol.solve(p.A).transpose();  // A^T (A A^T)^{-1}
  const Vector x_particular = pinv * p.b;
  const double b_norm = p.b.norm();

  Vector z = Vector::Zero(d);
  Vector u = Vector::Zero(d);
  Vector x(d);
  Vector z_prev(d);
  double rho = p.rho;
  int next_polish = kCertifyEvery;

  BasisPursuitResult res;
  for (int it = 1; it <= p.max_iter; ++it) {
    const Vector v = z - u;
    x = v - pinv * (p.A * v) + x_particular;
    z_prev = z;
    z = soft_threshold(x + u, 1.0 / rho);
    u += x - z;

    const double r = (x - z).norm();
    const double s = rho * (z - z_prev).norm();
    const double scale = 1.0 + std::max(x.norm(), z.norm());
    res.iterations = it;
    res.primal_residual = r;
    res.dual_residual = s;
    // Degenerate programs (non-unique minimizers) can make ADMM crawl, so
    // also stop on a duality-gap certificate.
    // Polishing costs a QR of an m x m matrix, so it backs off geometrically.
    if (it % kCertifyEvery == 0) {
      const Vector y_admm = pinv.transpose() * (rho * u);
      Vector w, y_sign;
      if (it >= next_polish) {
        std::tie(w, y_sign) = PolishOnSupport(p.A, p.b, x);
        next_polish *= 2;
      }
      const bool polished = w.size() > 0;
      const bool w_feasible =
          polished && (p.A * w - p.b).norm() <= p.tol * (1.0 + b_norm);
      const double x_gap =
          std::min(RelativeGap(p.A, p.b, x, y_admm),
                   polished ? RelativeGap(p.A, p.b, x, y_sign) : INFINITY);
      const double w_gap = w_feasible ? std::min(RelativeGap(p.A, p.b, w, y_admm),
                                                 RelativeGap(p.A, p.b, w, y_sign))
                                      : INFINITY;
      const std::pair<const Vector*, double> candidates[] = {{&x, x_gap}, {&w, w_gap}};
      for (const auto& [point, gap] : candidates) {
        if (gap <= p.tol) {
          res.z = *point;
          res.constraint_residual = (p.A * res.z - p.b).norm();
          return res;
        }
      }
    }
    if (r <= p.tol * scale && s <= p.tol * (1.0 + rho * u.norm())) {
      res.constraint_residual = (p.A * z - p.b).norm();
      if (res.constraint_residual <= p.tol * (1.0 + b_norm)) {
        res.z = z;
        return res;
      }
    }
    // Residual balancing can cycle between two penalties, so it is frozen
    // after a warm-up; with a fixed rho ADMM converges.
    if (it % 10 == 0 && it <= kBalancingIterations) {
      if (r > 10 * s) {
        rho *= 2;
        u /= 2;
      } else if (s > 10 * r) {
        rho /= 2;
        u *= 2;
      }
    }
  }
  throw ConvergenceError("basis_pursuit: iteration limit reached",
                         res.primal_residual, res.dual_residual);
}

}  // namespace sparsedp
