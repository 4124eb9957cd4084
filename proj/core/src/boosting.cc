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

#include "sparsedp/boosting.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "sparsedp/error.h"

namespace sparsedp {

namespace {

constexpr std::uint64_t kCoinStream = 0xc011c011c011c011ULL;

double score_of(const LossModel& loss, const Dataset& S, const Vector& x,
                Mode mode) {
  if (mode == Mode::kConvex) return empirical_risk(loss, S, x);
  return empirical_gradient(loss, S, x).norm();
}

}  // namespace

BoostConfig make_boost_config(const LossModel& loss, std::size_t n,
                              const PrivacyParams& pp, double beta, Mode mode,
                              std::optional<double> gamma) {
  validate_privacy(pp);
  SPARSEDP_REQUIRE(pp.delta > 0, "boost: requires delta > 0");
  SPARSEDP_REQUIRE(beta > 0 && beta < 1, "boost: beta in (0, 1)");
  SPARSEDP_REQUIRE(n >= 1, "boost: empty dataset");
  BoostConfig c;
  c.gamma = gamma.value_or(std::min(0.5, 0.75 * beta));
  SPARSEDP_REQUIRE(c.gamma > 0 && c.gamma <= 1, "boost: gamma in (0, 1]");
  c.K = static_cast<std::size_t>(
      std::max(1.0, std::ceil(std::log(2.0 / pp.delta) / c.gamma - 1e-12)));
  const double kd = static_cast<double>(c.K);
  c.inner = {pp.eps / 12.0, std::pow(pp.delta / (4.0 * kd), 2)};
  const double en = pp.eps * static_cast<double>(n);
  const auto& lc = loss.constants();
  if (mode == Mode::kConvex) {
    SPARSEDP_REQUIRE(lc.B.has_value(), "boost: convex mode needs B");
    c.lambda_score = 12.0 * *lc.B / en;
  } else {
    c.lambda_score = 24.0 * lc.L / en;
  }
  return c;
}

BoostResult boost(const Dataset& S, const PrivacyParams& pp, double beta,
                  Mode mode, const LossModel& loss, const InnerRunner& inner,
                  RngStream& rng, const BoostOptions& opts) {
  validate_privacy(pp);
  SPARSEDP_REQUIRE(pp.delta <= pp.eps / 10.0, "boost: requires delta <= eps/10");
  BoostResult r;
  r.config = make_boost_config(loss, S.size(), pp, beta, mode, opts.gamma);
  const BoostConfig& c = r.config;

  // Drawn up front so the stopping distribution does not depend on how the
  // runs are scheduled.
  RngStream coin_rng = rng.Substream(kCoinStream);
  std::vector<bool> stop(c.K);
  for (std::size_t k = 0; k < c.K; ++k) stop[k] = coin_rng.Bernoulli(c.gamma);

  std::string last_error;
  for (std::size_t k = 0; k < c.K; ++k) {
    BoostRun run;
    try {
      RngStream run_rng = rng.Substream(2 * k);
      run.x = inner(c.inner, run_rng);
      run.score = score_of(loss, S, run.x, mode);
      RngStream score_rng = rng.Substream(2 * k + 1);
      run.noisy_score = run.score + (opts.zero_score_noise
                                         ? 0.0
                                         : score_rng.Laplace(c.lambda_score));
      run.ok = true;
    } catch (const std::exception& e) {
      run.error = e.what();
      last_error = run.error;
    }
    r.runs.push_back(std::move(run));
    if (stop[k]) {
      r.stopped_by_coin = true;
      break;
    }
  }

  bool found = false;
  for (std::size_t k = 0; k < r.runs.size(); ++k) {
    const BoostRun& run = r.runs[k];
    if (!run.ok) continue;
    if (!found || run.noisy_score < r.runs[r.selected].noisy_score) {
      r.selected = k;
      found = true;
    }
  }
  if (!found) {
    throw std::runtime_error("boost: every inner run failed: " + last_error);
  }
  r.x = r.runs[r.selected].x;
  return r;
}

InnerRunner sgd_inner_runner(const Dataset& S, const Vector& x0, double eta,
                             const LossModel& loss, const FeasibleSet& X,
                             Mode mode, const SgdConfig& cfg) {
  return [&S, x0, eta, &loss, X, mode, cfg](const PrivacyParams& inner,
                                            RngStream& rng) {
    return run_bias_reduced_sgd(S, x0, inner, eta, loss, X, mode, rng, cfg)
        .output;
  };
}

double boost_selection_slack(const BoostConfig& cfg,
                             const PrivacyParams& pp, double beta) {
  SPARSEDP_REQUIRE(beta > 0 && beta < 1, "boost: beta in (0, 1)");
  SPARSEDP_REQUIRE(pp.delta > 0, "boost: requires delta > 0");
  const double alpha_prime =
      cfg.lambda_score *
      std::log(16.0 / (3.0 * beta * beta) * std::log(2.0 / pp.delta));
  return 2.0 * alpha_prime;
}

}  // namespace sparsedp
