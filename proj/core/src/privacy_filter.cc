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

#include "sparsedp/privacy_filter.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

#include "sparsedp/bias_reduction.h"
#include "sparsedp/error.h"
#include "sparsedp/noise.h"

namespace sparsedp {

double step_weight(int N, std::size_t n) {
  SPARSEDP_REQUIRE(n >= 2, "step_weight: need n >= 2");
  SPARSEDP_REQUIRE(N >= 0 && N <= truncation_level(n),
                   "step_weight: N outside [0, floor(log2 n) - 1]");
  return (3.0 * std::ldexp(1.0, N + 1) + 1.0) / (16.0 * static_cast<double>(n));
}

StepCost step_cost(int N, double eps, double delta, std::size_t n) {
  const double w = step_weight(N, n);
  StepCost c{w * eps, w * delta};
  if (c.eps_t > eps / 4 || c.delta_t > delta / 4) {
    throw InternalConsistencyError("step_cost: exceeds a quarter of the budget");
  }
  return c;
}

FilterState make_filter(const PrivacyParams& target, std::size_t n) {
  validate_privacy(target);
  SPARSEDP_REQUIRE(target.delta > 0, "privacy filter: requires delta > 0");
  SPARSEDP_REQUIRE(n >= 2, "privacy filter: need n >= 2");
  FilterState s;
  s.target = target;
  s.n = n;
  return s;
}

double composition_level(const PrivacyParams& target, double sum_sq) {
  return std::sqrt(2.0 * std::log(4.0 / target.delta) * sum_sq) +
         0.5 * target.eps * sum_sq;
}

bool filter_condition(const PrivacyParams& target, double sum_sq,
                      double sum_lin) {
  return composition_level(target, sum_sq) <= 0.5 && sum_lin <= 0.25;
}

FilterDecision filter_admit(const FilterState& state, int N_next) {
  const double w = step_weight(N_next, state.n);
  return filter_condition(state.target, state.sum_sq + w * w,
                          state.sum_lin + w)
             ? FilterDecision::kContinue
             : FilterDecision::kHalt;
}

void filter_append(FilterState& state, int N) {
  const double w = step_weight(N, state.n);
  state.sum_sq += w * w;
  state.sum_lin += w;
  state.log.push_back(N);
  ++state.steps;
}

void check_filter_invariants(const FilterState& state) {
  if (state.log.size() != state.steps) {
    throw InternalConsistencyError("filter: step count does not match log");
  }
  double sq = 0.0;
  double lin = 0.0;
  for (int N : state.log) {
    const double w = step_weight(N, state.n);
    sq += w * w;
    lin += w;
  }
  const auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
  };
  if (!close(sq, state.sum_sq) || !close(lin, state.sum_lin)) {
    throw InternalConsistencyError("filter: cached sums disagree with log");
  }
  if (!filter_condition(state.target, state.sum_sq, state.sum_lin)) {
    throw InternalConsistencyError("filter: admitted steps exceed the budget");
  }
  if (state.sum_lin * state.target.delta > state.target.delta / 4) {
    throw InternalConsistencyError("filter: delta spend exceeds delta/4");
  }
}

void write_budget_csv(std::ostream& out, const FilterState& state) {
  out.imbue(std::locale::classic());
  out << "step,N,eps_t,delta_t,cum_sq,cum_lin\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  double sq = 0.0;
  double lin = 0.0;
  for (std::size_t t = 0; t < state.log.size(); ++t) {
    const int N = state.log[t];
    const auto c = step_cost(N, state.target.eps, state.target.delta, state.n);
    const double w = step_weight(N, state.n);
    sq += w * w;
    lin += w;
    out << t << ',' << N << ',' << c.eps_t << ',' << c.delta_t << ',' << sq
        << ',' << lin << '\n';
  }
}

GenericFilter::GenericFilter(double eps_budget, double delta_budget,
                             double delta_prime)
    : eps_budget_(eps_budget),
      delta_budget_(delta_budget),
      delta_prime_(delta_prime) {
  SPARSEDP_REQUIRE(eps_budget > 0, "GenericFilter: eps budget must be positive");
  SPARSEDP_REQUIRE(delta_budget >= 0, "GenericFilter: negative delta budget");
  SPARSEDP_REQUIRE(delta_prime > 0 && delta_prime < 1,
                   "GenericFilter: delta_prime must lie in (0, 1)");
}

double GenericFilter::Level(double sum_sq) const {
  return std::sqrt(2.0 * std::log(1.0 / delta_prime_) * sum_sq) + 0.5 * sum_sq;
}

bool GenericFilter::WouldAdmit(double eps_t, double delta_t) const {
  SPARSEDP_REQUIRE(eps_t >= 0 && delta_t >= 0, "GenericFilter: negative cost");
  return Level(sum_sq_ + eps_t * eps_t) <= eps_budget_ &&
         sum_delta_ + delta_t <= delta_budget_;
}

bool GenericFilter::TryAdmit(double eps_t, double delta_t) {
  if (!WouldAdmit(eps_t, delta_t)) return false;
  sum_sq_ += eps_t * eps_t;
  sum_delta_ += delta_t;
  ++steps_;
  return true;
}

double GenericFilter::eps_spent() const { return Level(sum_sq_); }

std::size_t simulate_stopping_time(std::size_t n, const PrivacyParams& target,
                                   RngStream& rng) {
  FilterState state = make_filter(target, n);
  const int M = truncation_level(n);
  while (true) {
    const int N = tgeom_sample(M, rng);
    if (filter_admit(state, N) == FilterDecision::kHalt) return state.steps;
    filter_append(state, N);
  }
}

namespace {

double Quantile(std::vector<std::size_t> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return (1 - frac) * static_cast<double>(sorted[lo]) +
         frac * static_cast<double>(sorted[hi]);
}

}  // namespace

StoppingTimeStats stopping_time_stats(std::size_t n, double delta,
                                      std::size_t trials, RngStream& rng,
                                      double c_prime, double eps) {
  SPARSEDP_REQUIRE(trials >= 1, "stopping_time_stats: need trials >= 1");
  const PrivacyParams target{eps, delta};
  validate_privacy(target);
  StoppingTimeStats st;
  const double nd = static_cast<double>(n);
  if (delta >= 1.0 / (nd * nd)) {
    st.warnings.push_back(
        "delta >= 1/n^2: the expected stopping time bounds are not guaranteed");
  }
  st.samples.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    RngStream r = rng.Substream(k);
    st.samples.push_back(simulate_stopping_time(n, target, r));
  }
  std::vector<std::size_t> sorted = st.samples;
  std::sort(sorted.begin(), sorted.end());
  const double sum = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  st.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (auto v : sorted) ss += (static_cast<double>(v) - st.mean) * (static_cast<double>(v) - st.mean);
  st.stddev = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
  st.q05 = Quantile(sorted, 0.05);
  st.q25 = Quantile(sorted, 0.25);
  st.q50 = Quantile(sorted, 0.50);
  st.q75 = Quantile(sorted, 0.75);
  st.q95 = Quantile(sorted, 0.95);
  st.min = sorted.front();
  st.max = sorted.back();
  const double l4 = std::log(4.0 / delta);
  st.lower_bound = nd * nd / ((nd + 1) * l4) - 1.0;
  st.upper_bound = 64.0 * nd / (9.0 * l4);
  st.threshold = c_prime * nd / std::log(2.0 / delta);
  std::size_t below = 0;
  for (auto v : sorted) below += static_cast<double>(v) <= st.threshold ? 1 : 0;
  st.prob_below_threshold = static_cast<double>(below) / static_cast<double>(trials);
  return st;
}

}  // namespace sparsedp
