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

#include "sparsedp/sgd.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "sparsedp/error.h"
#include "sparsedp/noise.h"

namespace sparsedp {
namespace {

// Substream reserved for the output-index reservoir.
constexpr std::uint64_t kReservoirStream = 0xffffffff00000001ULL;

bool RelClose(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Mode ParseMode(const std::string& s) {
  if (s == "convex") return Mode::kConvex;
  if (s == "nonconvex") return Mode::kNonconvex;
  throw InvalidArgument("unknown mode '" + s + "'");
}

std::string ToString(Mode m) {
  return m == Mode::kConvex ? "convex" : "nonconvex";
}

RunTrace run_bias_reduced_sgd(const Dataset& S, const Vector& x0,
                              const PrivacyParams& pp, double eta,
                              const LossModel& loss, const FeasibleSet& X,
                              Mode mode, RngStream& rng,
                              const SgdConfig& cfg) {
  validate_privacy(pp);
  validate_feasible_set(X);
  SPARSEDP_REQUIRE(pp.delta > 0, "run_bias_reduced_sgd: requires delta > 0");
  SPARSEDP_REQUIRE(eta >= 0 && std::isfinite(eta),
                   "run_bias_reduced_sgd: eta must be finite and nonnegative");
  SPARSEDP_REQUIRE(S.size() >= 2, "run_bias_reduced_sgd: need n >= 2");
  SPARSEDP_REQUIRE(static_cast<std::size_t>(x0.size()) == S.bounds.d,
                   "run_bias_reduced_sgd: x0 has wrong dimension");
  SPARSEDP_REQUIRE(contains(X, x0, 1e-9), "run_bias_reduced_sgd: x0 not in X");

  const std::size_t n = S.size();
  const int M = truncation_level(n);
  const PrivacyParams oracle_pp{pp.eps / 8, pp.delta / 4};

  RunTrace tr;
  tr.eta = eta;
  tr.mode = mode;
  tr.X = X;
  tr.filter = make_filter(pp, n);

  RngStream reservoir = rng.Substream(kReservoirStream);
  Vector x = x0;
  Vector avg = x0;
  Vector picked = x0;
  std::size_t t = 0;
  if (cfg.record_trace) tr.iterates.push_back(x);
  if (cfg.record_objective) tr.objective.push_back(empirical_risk(loss, S, x));

  while (true) {
    RngStream step_rng = rng.Substream(t);
    const int N = tgeom_sample(M, step_rng);
    const BatchDraw draw = sample_batches_given(n, N, step_rng);
    const GradientEstimate est = bias_reduced_gradient(
        x, S, draw, oracle_pp, loss, cfg.mechanism, step_rng);

    const StepCost cost = step_cost(N, pp.eps, pp.delta, n);
    if (!RelClose(est.eps_consumed, cost.eps_t) ||
        !RelClose(est.delta_consumed, cost.delta_t)) {
      throw InternalConsistencyError(
          "run_bias_reduced_sgd: oracle budget differs from step cost");
    }
    tr.draws.push_back(N);
    tr.eps_t.push_back(cost.eps_t);

    x = project_euclidean(X, x - eta * est.g);
    if (cfg.record_trace) {
      tr.gradients.push_back(est.g);
      tr.iterates.push_back(x);
    }
    if (cfg.record_objective) tr.objective.push_back(empirical_risk(loss, S, x));

    if (filter_admit(tr.filter, N) == FilterDecision::kHalt) {
      tr.T = t;
      tr.final_step = cost;
      break;
    }
    filter_append(tr.filter, N);
    ++t;
    // x now holds x^t for the next round; fold it into the outputs.
    avg += (x - avg) / static_cast<double>(t + 1);
    if (reservoir.UniformInt(t + 1) == 0) {
      picked = x;
      tr.t_hat = t;
    }
  }

  const BudgetReport budget = budget_at_halt(tr);
  if (!budget.ok) {
    throw InternalConsistencyError("run_bias_reduced_sgd: " + budget.detail);
  }

  tr.output = mode == Mode::kConvex ? avg : picked;
  return tr;
}

BudgetReport budget_at_halt(const RunTrace& trace) {
  const FilterState& f = trace.filter;
  const PrivacyParams& pp = f.target;
  check_filter_invariants(f);
  BudgetReport r;
  r.level = composition_level(pp, f.sum_sq);
  r.delta_admitted = pp.delta * f.sum_lin;
  r.eps_total = pp.eps * r.level + trace.final_step.eps_t;
  r.delta_total = r.delta_admitted + pp.delta / 4 + trace.final_step.delta_t;
  const double tol = 1 + 1e-12;
  if (r.level > 0.5 * tol || f.sum_lin > 0.25 * tol) {
    r.detail = "admitted steps break the filter condition";
  } else if (trace.final_step.eps_t > pp.eps / 4 * tol ||
             trace.final_step.delta_t > pp.delta / 4 * tol) {
    r.detail = "final step costs more than a quarter of the budget";
  } else if (r.eps_total > pp.eps * tol || r.delta_total > pp.delta * tol) {
    r.detail = "total budget exceeded";
  } else {
    r.ok = true;
  }
  return r;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out.imbue(std::locale::classic());
  out << "step,N_t,grad_norm,objective,cum_eps\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  double cum = 0.0;
  for (std::size_t t = 0; t < trace.draws.size(); ++t) {
    cum += trace.eps_t[t];
    out << t << ',' << trace.draws[t] << ',';
    if (t < trace.gradients.size()) out << trace.gradients[t].norm();
    out << ',';
    if (t < trace.objective.size()) out << trace.objective[t];
    out << ',' << cum << '\n';
  }
}

}  // namespace sparsedp
