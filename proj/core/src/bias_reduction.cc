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

#include "sparsedp/bias_reduction.h"

#include <bit>
#include <cmath>

#include "sparsedp/error.h"
#include "sparsedp/noise.h"

namespace sparsedp {

MechanismKind ParseMechanismKind(const std::string& s) {
  if (s == "cs" || s == "gaussian-recovery" || s == "compressed-sensing") {
    return MechanismKind::kGaussianRecovery;
  }
  if (s == "projection") return MechanismKind::kProjection;
  if (s == "noiseless") return MechanismKind::kNoiseless;
  throw InvalidArgument("unknown mechanism '" + s + "'");
}

std::string ToString(MechanismKind k) {
  switch (k) {
    case MechanismKind::kGaussianRecovery:
      return "cs";
    case MechanismKind::kProjection:
      return "projection";
    case MechanismKind::kNoiseless:
      return "noiseless";
  }
  return "unknown";
}

MechanismOutput estimate_mean(const MeanMechanism& mech, const Vector& mean,
                              const PrivacyParams& pp, std::size_t n, double L,
                              std::size_t s, RngStream& rng) {
  switch (mech.kind) {
    case MechanismKind::kGaussianRecovery:
      return gaussian_l1_recovery(mean, pp, n, L, s,
                                  static_cast<std::size_t>(mean.size()),
                                  mech.recovery, rng);
    case MechanismKind::kProjection:
      return projection_mechanism(mean, pp, n, L, s, rng, mech.projection);
    case MechanismKind::kNoiseless: {
      MechanismOutput out;
      out.estimate = mean;
      out.noise = Vector::Zero(mean.size());
      return out;
    }
  }
  throw InvalidArgument("estimate_mean: unknown mechanism");
}

int truncation_level(std::size_t n) {
  SPARSEDP_REQUIRE(n >= 2, "truncation_level: need n >= 2");
  return static_cast<int>(std::bit_width(n)) - 2;
}

BatchDraw sample_batches_given(std::size_t n, int N, RngStream& rng) {
  SPARSEDP_REQUIRE(N >= 0 && N <= truncation_level(n),
                   "sample_batches: N outside [0, M]");
  BatchDraw draw;
  draw.N = N;
  const std::size_t half = std::size_t{1} << N;
  draw.B = rng.SampleWithoutReplacement(n, 2 * half);
  draw.O.assign(draw.B.begin(), draw.B.begin() + static_cast<std::ptrdiff_t>(half));
  draw.E.assign(draw.B.begin() + static_cast<std::ptrdiff_t>(half), draw.B.end());
  draw.I = static_cast<std::size_t>(rng.UniformInt(n));
  return draw;
}

BatchDraw sample_batches(std::size_t n, int M, RngStream& rng) {
  SPARSEDP_REQUIRE(M == truncation_level(n),
                   "sample_batches: M must be floor(log2 n) - 1");
  const int N = tgeom_sample(M, rng);
  return sample_batches_given(n, N, rng);
}

GradientEstimate bias_reduced_gradient(const Vector& x, const Dataset& S,
                                       const BatchDraw& draw,
                                       const PrivacyParams& pp,
                                       const LossModel& loss,
                                       const MeanMechanism& mech,
                                       RngStream& rng) {
  SPARSEDP_REQUIRE(x.allFinite(), "bias_reduced_gradient: non-finite x");
  const std::size_t n = S.size();
  const int M = truncation_level(n);
  SPARSEDP_REQUIRE(draw.N >= 0 && draw.N <= M,
                   "bias_reduced_gradient: N outside [0, M]");
  const std::size_t half = std::size_t{1} << draw.N;
  SPARSEDP_REQUIRE(draw.O.size() == half && draw.E.size() == half &&
                       draw.B.size() == 2 * half,
                   "bias_reduced_gradient: batch sizes inconsistent with N");
  const auto& c = loss.constants();
  const double L = c.L;
  const std::size_t s = c.s;

  // Sums over O and E, rescaled by powers of two, so that
  // grad F_B == (grad F_O + grad F_E) / 2 holds bit for bit.
  Vector sum_o = Vector::Zero(x.size());
  Vector sum_e = Vector::Zero(x.size());
  for (std::size_t i : draw.O) loss.Gradient(x, S.points.at(i), S.label(i)).AddTo(sum_o);
  for (std::size_t i : draw.E) loss.Gradient(x, S.points.at(i), S.label(i)).AddTo(sum_e);
  const double inv_half = std::ldexp(1.0, -draw.N);
  const Vector grad_o = sum_o * inv_half;
  const Vector grad_e = sum_e * inv_half;
  const Vector grad_b = (sum_o + sum_e) * (0.5 * inv_half);
  const Vector grad_i =
      loss.Gradient(x, S.points.at(draw.I), S.label(draw.I)).ToDense();

  const PrivacyParams sub{pp.eps / 4, pp.delta / 4};
  GradientEstimate est;
  est.draw = draw;
  RngStream r_b = rng.Substream(0);
  RngStream r_o = rng.Substream(1);
  RngStream r_e = rng.Substream(2);
  RngStream r_i = rng.Substream(3);
  est.plus = estimate_mean(mech, grad_b, sub, 2 * half, L, s, r_b);
  est.minus_o = estimate_mean(mech, grad_o, sub, half, L, s, r_o);
  est.minus_e = estimate_mean(mech, grad_e, sub, half, L, s, r_e);
  est.single = estimate_mean(mech, grad_i, sub, 1, L, s, r_i);

  est.p_N = tgeom_pmf(M, draw.N);
  est.g = (est.plus.estimate -
           0.5 * (est.minus_o.estimate + est.minus_e.estimate)) /
              est.p_N +
          est.single.estimate;

  const double weight = 3.0 * static_cast<double>(2 * half) + 1.0;
  est.eps_consumed = weight * 2.0 * sub.eps / static_cast<double>(n);
  est.delta_consumed = weight * sub.delta / static_cast<double>(n);
  return est;
}

}  // namespace sparsedp
