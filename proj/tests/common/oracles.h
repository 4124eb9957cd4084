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

// Independent reference implementations used as test oracles. They favour
// obviousness over speed and share no code with the library.

#ifndef SPARSEDP_TESTS_COMMON_ORACLES_H_
#define SPARSEDP_TESTS_COMMON_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "sparsedp/sparse_vector.h"

namespace sparsedp::testing {

// l1-ball projection from the KKT conditions: the answer is soft(v, theta)
// with theta >= 0 the root of ||soft(v, theta)||_1 = r. Found by bisection,
// then refined exactly on the active set.
inline Vector L1ProjectionKkt(const Vector& v, double r) {
  if (v.lpNorm<1>() <= r) return v;
  auto mass = [&](double t) {
    double m = 0;
    for (Eigen::Index j = 0; j < v.size(); ++j) m += std::max(std::abs(v[j]) - t, 0.0);
    return m;
  };
  double lo = 0, hi = v.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > r ? lo : hi) = mid;
  }
  // On the active set {|v_j| > theta} the root solves sum (|v_j| - theta) = r.
  double sum = 0;
  int k = 0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v[j]) > hi) {
      sum += std::abs(v[j]);
      ++k;
    }
  }
  const double theta = k > 0 ? (sum - r) / k : hi;
  Vector out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v[j]) - theta;
    out[j] = a > 0 ? std::copysign(a, v[j]) : 0.0;
  }
  return out;
}

// Brute force for small d: the projection onto {||x||_1 <= r} lies on a face
// {x_j = 0 off P, sum_{j in P} sigma_j x_j = r, sign(x_j) = sigma_j}. Try every
// support P and sign pattern sigma, project onto the hyperplane, keep the
// closest candidate that stays on its face.
inline Vector L1ProjectionBruteForce(const Vector& v, double r) {
  if (v.lpNorm<1>() <= r) return v;
  const int d = static_cast<int>(v.size());
  Vector best = Vector::Zero(d);
  double best_dist = (best - v).squaredNorm();
  for (std::uint32_t supp = 1; supp < (1u << d); ++supp) {
    for (std::uint32_t sg = 0; sg < (1u << d); ++sg) {
      if ((sg & ~supp) != 0) continue;
      int k = 0;
      double dot = 0;
      for (int j = 0; j < d; ++j) {
        if (supp >> j & 1) {
          const double s = (sg >> j & 1) ? -1.0 : 1.0;
          dot += s * v[j];
          ++k;
        }
      }
      const double shift = (dot - r) / k;
      Vector x = Vector::Zero(d);
      bool ok = true;
      for (int j = 0; j < d && ok; ++j) {
        if (!(supp >> j & 1)) continue;
        const double s = (sg >> j & 1) ? -1.0 : 1.0;
        x[j] = v[j] - s * shift;
        ok = s * x[j] >= 0;
      }
      if (!ok) continue;
      const double dist = (x - v).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = x;
      }
    }
  }
  return best;
}

inline double BinomialSe(double p, double n) { return std::sqrt(p * (1 - p) / n); }

}  // namespace sparsedp::testing

#endif  // SPARSEDP_TESTS_COMMON_ORACLES_H_
