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

#include "sparsedp/hyperparams.h"

#include <cmath>

#include "sparsedp/error.h"

namespace sparsedp {

Hyperparams recommended_hyperparams(const LossModel& loss, std::size_t n,
                                    const PrivacyParams& pp, Mode mode,
                                    const HyperConstants& k) {
  validate_privacy(pp);
  SPARSEDP_REQUIRE(pp.delta > 0, "recommended_hyperparams: requires delta > 0");
  SPARSEDP_REQUIRE(n >= 2, "recommended_hyperparams: need n >= 2");
  const auto& c = loss.constants();
  SPARSEDP_REQUIRE(c.L > 0 && c.s >= 1 && c.d >= c.s,
                   "recommended_hyperparams: need L > 0 and 1 <= s <= d");
  const double s = static_cast<double>(c.s);
  const double d = static_cast<double>(c.d);
  const double nd = static_cast<double>(n);
  const double log_inv_delta = std::log(1.0 / pp.delta);
  const double core = s * std::log(d / s) * log_inv_delta;

  Hyperparams h;
  h.b = k.c_b * c.L * std::pow(core, 0.25) / std::sqrt(nd * pp.eps);
  h.nu2 = k.c_nu * c.L * c.L * std::log(nd) * std::sqrt(core) / pp.eps;
  h.tau = k.C_prime * nd / std::log(2.0 / pp.delta);
  const double nu = std::sqrt(h.nu2);
  if (mode == Mode::kConvex) {
    SPARSEDP_REQUIRE(c.D.has_value(),
                     "recommended_hyperparams: convex mode needs D");
    const double D = *c.D;
    h.eta = D / (nu * std::sqrt(h.tau));
    h.U = k.C * D * (nu * std::sqrt(h.tau) + h.b * h.tau);
  } else {
    SPARSEDP_REQUIRE(c.Gamma.has_value() && c.H.has_value(),
                     "recommended_hyperparams: nonconvex mode needs Gamma and H");
    const double G = *c.Gamma;
    const double H = *c.H;
    h.eta = std::sqrt(G / (H * h.tau * h.nu2));
    h.U = k.C * (std::sqrt(G * H * h.tau) * nu + c.L * h.tau * h.b);
  }
  return h;
}

}  // namespace sparsedp
