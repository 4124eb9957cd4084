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

#ifndef SPARSEDP_HARNESS_EXPERIMENTS_H_
#define SPARSEDP_HARNESS_EXPERIMENTS_H_

#include <cstddef>

#include "sparsedp/bias_reduction.h"
#include "sparsedp/boosting.h"
#include "sparsedp/hyperparams.h"
#include "sparsedp/harness/problems.h"
#include "sparsedp/sgd.h"

namespace sparsedp::harness {

// One SGD run with the recommended step size, scored against the utility
// threshold: excess risk <= U / tau (convex) or ||grad F_S|| <= sqrt(U / tau)
// (nonconvex).
struct SgdOutcome {
  Hyperparams hp;
  double metric = 0.0;     // excess risk or gradient norm of the output
  double threshold = 0.0;  // U / tau or sqrt(U / tau)
  bool success = false;
  std::size_t T = 0;
  BudgetReport budget;
};

SgdOutcome run_sgd_trial(const Problem& p, const PrivacyParams& pp, Mode mode,
                         const MeanMechanism& mech, const HyperConstants& k,
                         RngStream& rng);

// Boosted run: the inner runs use the recommended step size for the inner
// budget, and success means the selected point is within the inner
// threshold plus boost_selection_slack.
struct BoostOutcome {
  Hyperparams inner_hp;
  BoostConfig config;
  double metric = 0.0;
  double threshold = 0.0;
  bool success = false;
  std::size_t runs = 0;
  std::size_t inner_successes = 0;  // runs whose own metric met the inner threshold
  std::size_t sgd_budget_violations = 0;
};

BoostOutcome run_boost_trial(const Problem& p, const PrivacyParams& pp,
                             double beta, Mode mode, const MeanMechanism& mech,
                             const HyperConstants& k, RngStream& rng);

// Convex: F_S(x) - f_star. Nonconvex: ||grad F_S(x)||.
double utility_metric(const Problem& p, const Vector& x, Mode mode);

}  // namespace sparsedp::harness

#endif  // SPARSEDP_HARNESS_EXPERIMENTS_H_
