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

#ifndef SPARSEDP_NOISE_H_
#define SPARSEDP_NOISE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sparsedp/rng.h"
#include "sparsedp/sparse_vector.h"

namespace sparsedp {

// Floating-point samplers. They are not hardened against the known attacks on
// floating-point Laplace/Gaussian implementations and should not be used
// where those attacks matter.

// d iid Laplace(scale) draws.
Vector laplace_vector(double scale, std::size_t d, RngStream& rng);
// d iid N(0, sigma^2) draws.
Vector gaussian_vector(double sigma, std::size_t d, RngStream& rng);

// Truncated geometric distribution on {0, ..., M}: p_k = C_M / 2^k with
// C_M = 1 / (2 (1 - 2^-(M+1))).
struct TGeom {
  int M = 0;
  std::vector<double> pmf;
};

TGeom make_tgeom(int M);
double tgeom_normalizer(int M);  // C_M
double tgeom_pmf(int M, int k);
double tgeom_cdf(int M, int k);
// p_k = 2^(M-k) / (2^(M+1) - 1) exactly. Requires M <= 61.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};
Rational tgeom_pmf_exact(int M, int k);

// Inverse-CDF draw from TGeom(M).
int tgeom_sample(int M, RngStream& rng);

// Tail events used as test predicates. Each holds with probability at least
// 1 - beta for noise of the stated distribution.
//   Laplace:  ||xi||_inf <= c * scale * ln(d / beta)
//   Gaussian: ||xi||_2   <= c * sigma * (sqrt(d) + sqrt(ln(1 / beta)))
bool laplace_concentration_holds(const Vector& xi, double scale, double beta,
                                 double c = 3.0);
bool gaussian_concentration_holds(const Vector& xi, double sigma, double beta,
                                  double c = 2.0);

}  // namespace sparsedp

#endif  // SPARSEDP_NOISE_H_
