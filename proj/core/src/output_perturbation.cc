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

#include "sparsedp/output_perturbation.h"

#include <cmath>
#include <sstream>

#include "sparsedp/error.h"
#include "sparsedp/geometry.h"
#include "sparsedp/noise.h"

namespace sparsedp {

double output_perturbation_scale(const LossModel& loss, std::size_t n,
                                 const PrivacyParams& pp, double lambda) {
  validate_privacy(pp);
  SPARSEDP_REQUIRE(lambda > 0, "output_perturbation: lambda must be positive");
  SPARSEDP_REQUIRE(n >= 1, "output_perturbation: empty dataset");
  const auto& c = loss.constants();
  const double denom = lambda * pp.eps * static_cast<double>(n);
  if (pp.pure()) {
    SPARSEDP_REQUIRE(c.H.has_value(),
                     "output_perturbation: delta = 0 requires a declared H");
    return 2.0 * std::sqrt(2.0 * static_cast<double>(c.s)) * c.L / denom *
           (2.0 * *c.H / lambda + 1.0);
  }
  return std::sqrt(8.0 * c.L * c.L * std::log(1.25 / pp.delta)) / denom;
}

OutputPerturbationResult output_perturbation(
    const Dataset& S, const PrivacyParams& pp, double lambda,
    const LossModel& loss, const FeasibleSet& X, RngStream& rng,
    const OutputPerturbationOptions& opts) {
  validate_feasible_set(X);
  if (pp.pure()) {
    SPARSEDP_REQUIRE(is_unconstrained(X),
                     "output_perturbation: delta = 0 requires unconstrained X");
  }
  OutputPerturbationResult r;
  r.scale = output_perturbation_scale(loss, S.size(), pp, lambda);
  r.gaussian = !pp.pure();

  ErmSolverOptions so;
  so.tol = opts.solver_tol;
  so.max_iter = opts.solver_max_iter;
  const ErmSolution sol = solve_erm(loss, S, X, lambda, so);
  r.x_star = sol.x;
  r.solver_residual = sol.residual;

  const std::size_t d = S.bounds.d;
  if (opts.zero_noise) {
    r.noise = Vector::Zero(static_cast<Eigen::Index>(d));
  } else {
    r.noise = r.gaussian ? gaussian_vector(r.scale, d, rng)
                         : laplace_vector(r.scale, d, rng);
  }
  r.noise_linf = r.noise.lpNorm<Eigen::Infinity>();
  r.x_hat = project_linf(X, r.x_star + r.noise).point;

  // x_star is feasible, so the l-infinity projection moves x_star + noise by
  // at most ||noise||_inf, and the triangle inequality gives the factor 2.
  const double dev = (r.x_hat - r.x_star).lpNorm<Eigen::Infinity>();
  const double slack = 1e-9 * (1.0 + r.noise_linf + r.x_star.lpNorm<Eigen::Infinity>());
  if (dev > 2.0 * r.noise_linf + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "output_perturbation: ||x_hat - x_star||_inf = " << dev
       << " exceeds 2 ||noise||_inf = " << 2.0 * r.noise_linf;
    throw InternalConsistencyError(os.str());
  }
  return r;
}

LambdaRegime ParseLambdaRegime(const std::string& s) {
  if (s == "erm-pure") return LambdaRegime::kErmPure;
  if (s == "erm-approx") return LambdaRegime::kErmApprox;
  if (s == "sco-pure") return LambdaRegime::kScoPure;
  if (s == "sco-approx") return LambdaRegime::kScoApprox;
  throw InvalidArgument("unknown lambda regime '" + s + "'");
}

double lambda_recommend(const LossModel& loss, std::size_t n,
                        const PrivacyParams& pp, double beta,
                        LambdaRegime regime) {
  validate_privacy(pp);
  SPARSEDP_REQUIRE(beta > 0 && beta < 1, "lambda_recommend: beta in (0, 1)");
  SPARSEDP_REQUIRE(n >= 1, "lambda_recommend: n must be positive");
  const auto& c = loss.constants();
  SPARSEDP_REQUIRE(c.D.has_value() && *c.D > 0,
                   "lambda_recommend: requires a declared D");
  const double L = c.L;
  const double D = *c.D;
  const double s = static_cast<double>(c.s);
  const double d = static_cast<double>(c.d);
  const double nd = static_cast<double>(n);
  const double eps_n = pp.eps * nd;
  const double log_d_beta = std::log(d / beta);
  switch (regime) {
    case LambdaRegime::kErmPure:
    case LambdaRegime::kScoPure: {
      SPARSEDP_REQUIRE(c.H.has_value(), "lambda_recommend: pure regimes need H");
      return std::cbrt(L * L * *c.H / (D * D) * s * log_d_beta / eps_n);
    }
    case LambdaRegime::kErmApprox: {
      SPARSEDP_REQUIRE(pp.delta > 0, "lambda_recommend: approx regimes need delta > 0");
      return L / D * std::pow(s * std::log(1 / pp.delta) * log_d_beta, 0.25) /
             std::sqrt(eps_n);
    }
    case LambdaRegime::kScoApprox: {
      SPARSEDP_REQUIRE(pp.delta > 0, "lambda_recommend: approx regimes need delta > 0");
      const double a = std::log(nd) * std::log(1 / beta) / nd;
      const double b = std::sqrt(s * std::log(1 / pp.delta) * log_d_beta) / eps_n;
      return L / D * std::sqrt(a + b);
    }
  }
  throw InvalidArgument("lambda_recommend: unknown regime");
}

}  // namespace sparsedp
