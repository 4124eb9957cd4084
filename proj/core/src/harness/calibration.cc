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

#include "sparsedp/harness/calibration.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sparsedp/error.h"
#include "sparsedp/harness/csv.h"
#include "sparsedp/harness/experiments.h"
#include "sparsedp/privacy_filter.h"

namespace sparsedp::harness {

CalibrationTable calibrate_constants(const CalibrationSettings& st,
                                     std::uint64_t seed) {
  SPARSEDP_REQUIRE(st.stop_trials >= 1 && st.runs >= 1,
                   "calibrate_constants: need at least one trial");
  CalibrationTable t;
  t.settings = st;
  t.seed = seed;

  // C' from simulated stopping times.
  RngStream stop_rng = RngStream(seed, 0);
  const PrivacyParams stop_pp{1.0, st.stop_delta};
  std::vector<double> scaled(st.stop_trials);
  const double log2d = std::log(2.0 / st.stop_delta);
  const double nd = static_cast<double>(st.stop_n);
  for (std::size_t k = 0; k < st.stop_trials; ++k) {
    RngStream r = stop_rng.Substream(k);
    scaled[k] = static_cast<double>(simulate_stopping_time(st.stop_n, stop_pp, r)) *
                log2d / nd;
  }
  std::sort(scaled.begin(), scaled.end());
  const auto idx = static_cast<std::size_t>(
      std::floor(st.target_prob * static_cast<double>(st.stop_trials)));
  t.C_prime = scaled[std::min(idx, scaled.size() - 1)];
  std::size_t below = 0;
  for (double v : scaled) below += (v <= t.C_prime) ? 1 : 0;
  t.prob_below = static_cast<double>(below) / static_cast<double>(st.stop_trials);
  const bool cprime_ok = t.prob_below >= 0.05 && t.prob_below <= 0.25;
  if (!cprime_ok) t.notes.push_back("P[T <= C' n/ln(2/delta)] outside [0.05, 0.25]");
  if (t.C_prime <= 0) {
    t.notes.push_back("C' quantile is zero; stopping times too short");
    return t;
  }

  // C from SGD runs on sparse least squares.
  RngStream data_rng(st.data_seed, 0);
  const Problem p = make_problem(ProblemKind::kSparseLeastSquares, st.d, st.s,
                                 st.n, data_rng);
  HyperConstants k;
  k.C = 1.0;
  k.C_prime = t.C_prime;
  MeanMechanism mech;
  mech.kind = MechanismKind::kProjection;
  RngStream run_rng = RngStream(seed, 1);
  std::vector<double> ratio(st.runs);
  for (std::size_t r = 0; r < st.runs; ++r) {
    RngStream rr = run_rng.Substream(r);
    const SgdOutcome o = run_sgd_trial(p, st.pp, Mode::kConvex, mech, k, rr);
    ratio[r] = o.metric / o.threshold;
  }
  std::vector<double> sorted = ratio;
  std::sort(sorted.begin(), sorted.end());
  // Smallest C with at least half the runs at or below C.
  const std::size_t need = (st.runs + 1) / 2;
  t.C = std::max(sorted[need - 1], 0.0);
  std::size_t wins = 0;
  for (double v : ratio) wins += (v <= t.C) ? 1 : 0;
  t.success = static_cast<double>(wins) / static_cast<double>(st.runs);
  if (t.C <= 0) t.notes.push_back("median excess risk is zero; C degenerate");
  t.ok = cprime_ok && t.C > 0 && t.success >= 0.5;
  return t;
}

void write_calibration_table(std::ostream& out, const CalibrationTable& t) {
  const auto& s = t.settings;
  out << "# sparsedp calibrate\n";
  out << "seed = " << t.seed << "\n";
  out << "stop_n = " << s.stop_n << "\n";
  out << "stop_delta = " << FormatDouble(s.stop_delta) << "\n";
  out << "stop_trials = " << s.stop_trials << "\n";
  out << "target_prob = " << FormatDouble(s.target_prob) << "\n";
  out << "C_prime = " << FormatDouble(t.C_prime) << "\n";
  out << "prob_below = " << FormatDouble(t.prob_below) << "\n";
  out << "benchmark = sparse-least-squares\n";
  out << "n = " << s.n << "\nd = " << s.d << "\ns = " << s.s << "\n";
  out << "eps = " << FormatDouble(s.pp.eps) << "\n";
  out << "delta = " << FormatDouble(s.pp.delta) << "\n";
  out << "runs = " << s.runs << "\n";
  out << "data_seed = " << s.data_seed << "\n";
  out << "C = " << FormatDouble(t.C) << "\n";
  out << "success = " << FormatDouble(t.success) << "\n";
  out << "ok = " << (t.ok ? "true" : "false") << "\n";
  for (const auto& note : t.notes) out << "# note: " << note << "\n";
}

void write_constants_header(std::ostream& out, const CalibrationTable& t) {
  const auto& s = t.settings;
  out << R"(// Copyright 2026 The sparsedp Authors
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

#ifndef SPARSEDP_CALIBRATED_CONSTANTS_H_
#define SPARSEDP_CALIBRATED_CONSTANTS_H_

// Frozen output of `sparsedp calibrate`. Regenerate with the command below
// and paste the emitted table; do not edit by hand.
//
)";
  out << "//   sparsedp calibrate --seed " << t.seed << "\n";
  out << "//\n";
  out << "// C': stopping time, n = " << s.stop_n
      << ", delta = " << FormatDouble(s.stop_delta) << ", " << s.stop_trials
      << " runs, P[T <= C' n / ln(2/delta)] = " << FormatDouble(t.prob_below)
      << ".\n";
  out << "// C: sparse least squares, n = " << s.n << ", d = " << s.d
      << ", s = " << s.s << ", eps = " << FormatDouble(s.pp.eps)
      << ", delta = " << FormatDouble(s.pp.delta) << ", " << s.runs
      << " runs, success = " << FormatDouble(t.success) << ".\n";
  out << "\nnamespace sparsedp::calibrated {\n\n";
  out << "inline constexpr double kStoppingCPrime = " << FormatDouble(t.C_prime)
      << ";\n";
  out << "inline constexpr double kUtilityC = " << FormatDouble(t.C) << ";\n";
  out << "\n}  // namespace sparsedp::calibrated\n\n";
  out << "#endif  // SPARSEDP_CALIBRATED_CONSTANTS_H_\n";
}

}  // namespace sparsedp::harness
