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

#include "sparsedp/harness/experiments.h"

#include <cmath>

#include "sparsedp/error.h"

namespace sparsedp::harness {

namespace {

double threshold_of(const Hyperparams& hp, Mode mode) {
  const double r = hp.U / hp.tau;
  return mode == Mode::kConvex ? r : std::sqrt(r);
}

}  // namespace

double utility_metric(const Problem& p, const Vector& x, Mode mode) {
  if (mode == Mode::kConvex) {
    SPARSEDP_REQUIRE(p.x_star.has_value(),
                     "utility_metric: convex scoring needs x_star");
    return empirical_risk(*p.loss, p.S, x) - p.f_star;
  }
  return empirical_gradient(*p.loss, p.S, x).norm();
}

SgdOutcome run_sgd_trial(const Problem& p, const PrivacyParams& pp, Mode mode,
                         const MeanMechanism& mech, const HyperConstants& k,
                         RngStream& rng) {
  SgdOutcome o;
  o.hp = recommended_hyperparams(*p.loss, p.S.size(), pp, mode, k);
  SgdConfig cfg;
  cfg.mechanism = mech;
  cfg.record_trace = false;
  const RunTrace tr = run_bias_reduced_sgd(p.S, p.x0, pp, o.hp.eta, *p.loss,
                                           p.X, mode, rng, cfg);
  o.T = tr.T;
  o.budget = budget_at_halt(tr);
  o.metric = utility_metric(p, tr.output, mode);
  o.threshold = threshold_of(o.hp, mode);
  o.success = o.metric <= o.threshold;
  return o;
}

BoostOutcome run_boost_trial(const Problem& p, const PrivacyParams& pp,
                             double beta, Mode mode, const MeanMechanism& mech,
                             const HyperConstants& k, RngStream& rng) {
  BoostOutcome o;
  o.config = make_boost_config(*p.loss, p.S.size(), pp, beta, mode);
  o.inner_hp = recommended_hyperparams(*p.loss, p.S.size(), o.config.inner,
                                       mode, k);
  SgdConfig cfg;
  cfg.mechanism = mech;
  cfg.record_trace = false;
  const double inner_threshold = threshold_of(o.inner_hp, mode);
  const double eta = o.inner_hp.eta;
  InnerRunner inner = [&](const PrivacyParams& ipp, RngStream& r) {
    const RunTrace tr = run_bias_reduced_sgd(p.S, p.x0, ipp, eta, *p.loss,
                                             p.X, mode, r, cfg);
    if (!budget_at_halt(tr).ok) ++o.sgd_budget_violations;
    return tr.output;
  };
  const BoostResult br = boost(p.S, pp, beta, mode, *p.loss, inner, rng);
  o.runs = br.runs.size();
  for (const auto& run : br.runs) {
    if (run.ok && utility_metric(p, run.x, mode) <= inner_threshold) {
      ++o.inner_successes;
    }
  }
  o.metric = utility_metric(p, br.x, mode);
  o.threshold = inner_threshold + boost_selection_slack(o.config, pp, beta);
  o.success = o.metric <= o.threshold;
  return o;
}

}  // namespace sparsedp::harness
