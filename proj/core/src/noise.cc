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

#include "sparsedp/noise.h"

#include <algorithm>
#include <cmath>

#include "sparsedp/error.h"

namespace sparsedp {

Vector laplace_vector(double scale, std::size_t d, RngStream& rng) {
  SPARSEDP_REQUIRE(scale > 0 && std::isfinite(scale),
                   "laplace_vector: scale must be positive");
  Vector out(static_cast<Eigen::Index>(d));
  for (auto& x : out) x = rng.Laplace(scale);
  return out;
}

Vector gaussian_vector(double sigma, std::size_t d, RngStream& rng) {
  SPARSEDP_REQUIRE(sigma > 0 && std::isfinite(sigma),
                   "gaussian_vector: sigma must be positive");
  Vector out(static_cast<Eigen::Index>(d));
  for (auto& x : out) x = sigma * rng.StandardNormal();
  return out;
}

double tgeom_normalizer(int M) {
  SPARSEDP_REQUIRE(M >= 0, "tgeom: M must be nonnegative");
  return 1.0 / (2.0 * (1.0 - std::ldexp(1.0, -(M + 1))));
}

double tgeom_pmf(int M, int k) {
  SPARSEDP_REQUIRE(M >= 0, "tgeom: M must be nonnegative");
  SPARSEDP_REQUIRE(k >= 0 && k <= M, "tgeom_pmf: k outside [0, M]");
  // 2^(M-k) / (2^(M+1) - 1), written to stay accurate for large M.
  return std::ldexp(1.0, -k) / (2.0 - std::ldexp(1.0, -M));
}

double tgeom_cdf(int M, int k) {
  SPARSEDP_REQUIRE(M >= 0, "tgeom: M must be nonnegative");
  if (k < 0) return 0.0;
  if (k >= M) return 1.0;
  return -std::expm1(-(k + 1) * std::log(2.0)) /
         -std::expm1(-(M + 1) * std::log(2.0));
}

Rational tgeom_pmf_exact(int M, int k) {
  SPARSEDP_REQUIRE(M >= 0 && M <= 61, "tgeom_pmf_exact: M must be in [0, 61]");
  SPARSEDP_REQUIRE(k >= 0 && k <= M, "tgeom_pmf_exact: k outside [0, M]");
  return {std::uint64_t{1} << (M - k), (std::uint64_t{1} << (M + 1)) - 1};
}

TGeom make_tgeom(int M) {
  SPARSEDP_REQUIRE(M >= 0, "tgeom: M must be nonnegative");
  TGeom g;
  g.M = M;
  g.pmf.resize(static_cast<std::size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) g.pmf[static_cast<std::size_t>(k)] = tgeom_pmf(M, k);
  return g;
}

int tgeom_sample(int M, RngStream& rng) {
  SPARSEDP_REQUIRE(M >= 0, "tgeom: M must be nonnegative");
  if (M == 0) return 0;
  const double u = rng.Uniform();
  // Closed-form inverse of the CDF, then nudge to the exact boundary.
  const double c = -std::expm1(-(M + 1) * std::log(2.0));
  int k = static_cast<int>(std::floor(-std::log2(1.0 - u * c)));
  k = std::clamp(k, 0, M);
  while (k > 0 && tgeom_cdf(M, k - 1) > u) --k;
  while (k < M && tgeom_cdf(M, k) <= u) ++k;
  return k;
}

bool laplace_concentration_holds(const Vector& xi, double scale, double beta,
                                 double c) {
  const double d = static_cast<double>(xi.size());
  return xi.lpNorm<Eigen::Infinity>() <= c * scale * std::log(d / beta);
}

bool gaussian_concentration_holds(const Vector& xi, double sigma, double beta,
                                  double c) {
  const double d = static_cast<double>(xi.size());
  return xi.norm() <= c * sigma * (std::sqrt(d) + std::sqrt(std::log(1 / beta)));
}

}  // namespace sparsedp
