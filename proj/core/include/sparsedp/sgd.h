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

#ifndef SPARSEDP_SGD_H_
#define SPARSEDP_SGD_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsedp/bias_reduction.h"
#include "sparsedp/dataset.h"
#include "sparsedp/feasible_set.h"
#include "sparsedp/loss.h"
#include "sparsedp/privacy_filter.h"
#include "sparsedp/rng.h"

namespace sparsedp {

enum class Mode { kConvex, kNonconvex };
Mode ParseMode(const std::string& s);
std::string ToString(Mode m);

struct SgdConfig {
  MeanMechanism mechanism;
  // Keep every iterate and oracle output. Needed by the pathwise checks;
  // without it only the output and the budget ledger are kept.
  bool record_trace = true;
  // Also record F_S(x^t) per step (one pass over the data each).
  bool record_objective = false;
};

struct RunTrace {
  std::vector<Vector> iterates;   // x^0 .. x^{T+1}
  std::vector<Vector> gradients;  // G(x^0) .. G(x^T)
  std::vector<int> draws;         // N_0 .. N_T
  std::vector<double> eps_t;      // per-step eps cost, same length as draws
  std::vector<double> objective;  // F_S(x^t) when recorded
  std::size_t T = 0;
  double eta = 0.0;
  Mode mode = Mode::kConvex;
  FeasibleSet X;
  Vector output;
  std::size_t t_hat = 0;  // nonconvex mode: index of the returned iterate
  // Ledger over the admitted steps 0..T-1. Step T ran after the filter
  // halted; its cost is final_step.
  FilterState filter;
  StepCost final_step;
};

// Projected SGD with the bias-reduced oracle at (eps/8, delta/4), stopped by
// the privacy filter. Each iteration draws N_t, runs the oracle and steps;
// the loop ends at the first t whose level would break the filter condition,
// after that step has been taken. So steps 0..T run and T+2 iterates exist.
//
// Convex mode returns the average of x^0..x^T. Nonconvex mode returns x^t_hat
// with t_hat uniform on {0..T}, chosen by reservoir sampling so that the
// iterates need not be stored.
//
// Step t draws from rng.Substream(t); the reservoir uses a separate substream.
// Requires delta > 0, eta >= 0 and x0 in X.
RunTrace run_bias_reduced_sgd(const Dataset& S, const Vector& x0,
                              const PrivacyParams& pp, double eta,
                              const LossModel& loss, const FeasibleSet& X,
                              Mode mode, RngStream& rng,
                              const SgdConfig& cfg = {});

struct BudgetReport {
  double level = 0.0;           // composition_level over admitted steps
  double delta_admitted = 0.0;  // delta * sum of step weights
  double eps_total = 0.0;       // eps * level + final step
  double delta_total = 0.0;     // delta_admitted + delta/4 + final step
  bool ok = false;
  std::string detail;
};

// Spend at halt against the run's target (eps, delta): the filter invariants
// (level <= 1/2, weights sum <= 1/4), the final step within (eps/4, delta/4),
// and the totals within (eps, delta). The delta/4 term is the slack of the
// filter's own composition bound. run_bias_reduced_sgd throws when !ok.
BudgetReport budget_at_halt(const RunTrace& trace);

// step,N_t,grad_norm,objective,cum_eps. grad_norm and objective are empty
// when not recorded.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

}  // namespace sparsedp

#endif  // SPARSEDP_SGD_H_
