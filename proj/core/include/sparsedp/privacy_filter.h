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

#ifndef SPARSEDP_PRIVACY_FILTER_H_
#define SPARSEDP_PRIVACY_FILTER_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsedp/feasible_set.h"
#include "sparsedp/rng.h"

namespace sparsedp {

struct StepCost {
  double eps_t = 0.0;
  double delta_t = 0.0;
};

// Cost of one SGD step whose batch level is N, for a run with overall budget
// (eps, delta) on n points: (3 * 2^(N+1) + 1) / (16 n) times eps and delta.
// Never more than (eps/4, delta/4); that is checked.
StepCost step_cost(int N, double eps, double delta, std::size_t n);

// The dimensionless weight (3 * 2^(N+1) + 1) / (16 n).
double step_weight(int N, std::size_t n);

// Running ledger of admitted steps. sum_sq and sum_lin are sums of
// step_weight^2 and step_weight.
struct FilterState {
  PrivacyParams target;
  std::size_t n = 0;
  double sum_sq = 0.0;
  double sum_lin = 0.0;
  std::size_t steps = 0;
  std::vector<int> log;
};

FilterState make_filter(const PrivacyParams& target, std::size_t n);

// sqrt(2 ln(4/delta) sum_sq) + (eps/2) sum_sq. The run has spent eps times
// this much of its eps budget on admitted steps.
double composition_level(const PrivacyParams& target, double sum_sq);

// Both clauses:  composition_level <= 1/2  and  sum_lin <= 1/4.
bool filter_condition(const PrivacyParams& target, double sum_sq,
                      double sum_lin);

enum class FilterDecision { kContinue, kHalt };

// kContinue iff the condition still holds once N_next is appended. Pure.
FilterDecision filter_admit(const FilterState& state, int N_next);

// Appends N (whether or not it was admitted; the caller decides).
void filter_append(FilterState& state, int N);

// Recomputes the sums from the log and compares to the cached ones (1e-12
// relative) and checks both clauses. Throws InternalConsistencyError.
void check_filter_invariants(const FilterState& state);

// One CSV row per admitted step: step,N,eps_t,delta_t,cum_sq,cum_lin.
void write_budget_csv(std::ostream& out, const FilterState& state);

// A privacy filter for arbitrary per-step costs (eps_t, delta_t):
// admits while
//   sqrt(2 ln(1/delta_prime) sum eps_t^2) + (1/2) sum eps_t^2 <= eps_budget
//   and sum delta_t <= delta_budget.
// Setting eps_t = eps * w_t, delta_t = delta * w_t, eps_budget = eps / 2,
// delta_prime = delta / 4 and delta_budget = delta / 4 reproduces the SGD
// filter above decision for decision.
class GenericFilter {
 public:
  GenericFilter(double eps_budget, double delta_budget, double delta_prime);

  bool WouldAdmit(double eps_t, double delta_t) const;
  // Records the step if admissible; returns whether it was.
  bool TryAdmit(double eps_t, double delta_t);

  double eps_spent() const;
  double delta_spent() const { return sum_delta_; }
  std::size_t steps() const { return steps_; }

 private:
  double Level(double sum_sq) const;

  double eps_budget_;
  double delta_budget_;
  double delta_prime_;
  double sum_sq_ = 0.0;
  double sum_delta_ = 0.0;
  std::size_t steps_ = 0;
};

// Number of admitted steps T for an i.i.d. TGeom(M) level sequence: the first
// t such that the condition fails on N_0..N_t. Step T itself still runs.
std::size_t simulate_stopping_time(std::size_t n, const PrivacyParams& target,
                                   RngStream& rng);

struct StoppingTimeStats {
  double mean = 0.0;
  double stddev = 0.0;
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
  std::size_t min = 0, max = 0;
  // Bounds on E[T]: n^2 / ((n+1) ln(4/delta)) - 1 and 64 n / (9 ln(4/delta)).
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  // Threshold t = c_prime * n / ln(2/delta) and the fraction of runs with
  // T <= t.
  double threshold = 0.0;
  double prob_below_threshold = 0.0;
  std::vector<std::size_t> samples;
  std::vector<std::string> warnings;
};

// Warns (does not fail) when delta >= 1/n^2, where the bounds above are not
// guaranteed.
StoppingTimeStats stopping_time_stats(std::size_t n, double delta,
                                      std::size_t trials, RngStream& rng,
                                      double c_prime, double eps = 1.0);

}  // namespace sparsedp

#endif  // SPARSEDP_PRIVACY_FILTER_H_
