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

#ifndef SPARSEDP_BOOSTING_H_
#define SPARSEDP_BOOSTING_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sparsedp/dataset.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"
#include "sparsedp/rng.h"
#include "sparsedp/sgd.h"

namespace sparsedp {

struct BoostConfig {
  double gamma = 0.5;
  std::size_t K = 1;
  PrivacyParams inner;       // (eps/12, (delta/(4K))^2)
  double lambda_score = 0;   // Laplace scale of the score noise
};

// gamma = min(1/2, 3 beta / 4) unless overridden, K = ceil(ln(2/delta)/gamma),
// score scale 12 B/(n eps) (convex, needs B) or 24 L/(n eps) (nonconvex).
BoostConfig make_boost_config(const LossModel& loss, std::size_t n,
                              const PrivacyParams& pp, double beta, Mode mode,
                              std::optional<double> gamma = std::nullopt);

// Produces one candidate from one private run at the given budget.
using InnerRunner = std::function<Vector(const PrivacyParams& inner,
                                         RngStream& rng)>;

struct BoostOptions {
  std::optional<double> gamma;
  bool zero_score_noise = false;  // test hook
};

struct BoostRun {
  bool ok = false;
  std::string error;
  Vector x;
  double score = 0.0;        // exact score
  double noisy_score = 0.0;  // score plus Laplace noise
};

struct BoostResult {
  Vector x;
  std::size_t selected = 0;  // index into runs
  BoostConfig config;
  std::vector<BoostRun> runs;  // every executed run, failed ones included
  bool stopped_by_coin = false;
};

// Runs `inner` repeatedly at the inner budget. After each run the candidate
// is scored (F_S for convex, ||grad F_S|| for nonconvex) with Laplace noise;
// a gamma-coin then decides whether to stop. The coin flips are drawn up
// front from their own substream; run k uses rng.Substream(2k) and its score
// noise rng.Substream(2k+1). Returns the candidate with the least noisy
// score, earliest index on ties. A run that throws is recorded and skipped;
// if every run fails, the last error is rethrown as a runtime_error.
// Requires delta <= eps / 10.
BoostResult boost(const Dataset& S, const PrivacyParams& pp, double beta,
                  Mode mode, const LossModel& loss, const InnerRunner& inner,
                  RngStream& rng, const BoostOptions& opts = {});

// The usual inner runner: run_bias_reduced_sgd from x0 with step size eta.
InnerRunner sgd_inner_runner(const Dataset& S, const Vector& x0, double eta,
                             const LossModel& loss, const FeasibleSet& X,
                             Mode mode, const SgdConfig& cfg);

// Twice alpha' = lambda_score * ln((16 / (3 beta^2)) ln(2/delta)). With
// probability at least 1 - beta/2 no score noise exceeds alpha', so the
// selected run scores within this slack of the best executed run.
double boost_selection_slack(const BoostConfig& cfg,
                             const PrivacyParams& pp, double beta);

}  // namespace sparsedp

#endif  // SPARSEDP_BOOSTING_H_
