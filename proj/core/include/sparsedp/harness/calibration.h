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

#ifndef SPARSEDP_HARNESS_CALIBRATION_H_
#define SPARSEDP_HARNESS_CALIBRATION_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsedp/feasible_set.h"

namespace sparsedp::harness {

struct CalibrationSettings {
  // Stopping-time benchmark for C'.
  std::size_t stop_n = 1024;
  double stop_delta = 1e-8;
  std::size_t stop_trials = 500;
  double target_prob = 0.15;  // aimed-for P[T <= C' n / ln(2/delta)]
  // Sparse least squares benchmark for C.
  std::size_t n = 4096;
  std::size_t d = 4096;
  std::size_t s = 4;
  PrivacyParams pp{1.0, 1e-8};
  std::size_t runs = 200;
  std::uint64_t data_seed = 1;
};

struct CalibrationTable {
  CalibrationSettings settings;
  std::uint64_t seed = 0;
  double C_prime = 0.0;
  double prob_below = 0.0;  // empirical P[T <= C' n / ln(2/delta)]
  double C = 0.0;
  double success = 0.0;     // empirical success frequency at C
  bool ok = false;          // both targets met
  std::vector<std::string> notes;
};

// C' is the target_prob quantile of T ln(2/delta) / n over simulated
// stopping times, so that P[T <= C' n / ln(2/delta)] is near target_prob;
// it must land in [0.05, 0.25]. Since C does not enter the step size, C is
// the smallest value giving success frequency >= 1/2: the median of
// excess / (U/tau at C = 1) over SGD runs with the calibrated C'. The runs
// use the projection mechanism. Deterministic in seed.
CalibrationTable calibrate_constants(const CalibrationSettings& settings,
                                     std::uint64_t seed);

// key = value lines, readable by Config.
void write_calibration_table(std::ostream& out, const CalibrationTable& t);

// The contents of sparsedp/calibrated_constants.h for this table.
void write_constants_header(std::ostream& out, const CalibrationTable& t);

}  // namespace sparsedp::harness

#endif  // SPARSEDP_HARNESS_CALIBRATION_H_
