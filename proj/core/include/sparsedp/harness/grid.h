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

#ifndef SPARSEDP_HARNESS_GRID_H_
#define SPARSEDP_HARNESS_GRID_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sparsedp/harness/config.h"
#include "sparsedp/rng.h"

namespace sparsedp::harness {

struct GridCell {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t s = 0;
  double eps = 1.0;
  double delta = 0.0;
};

struct ExperimentConfig {
  std::vector<GridCell> cells;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  Config raw;  // everything else, for the trial functions
};

// Cartesian product of the list-valued keys n, d, s, eps, delta (in that
// nesting order, n outermost), plus trials, seed and threads.
ExperimentConfig make_experiment(const Config& c);

struct ResultRow {
  std::size_t cell = 0;
  GridCell params;
  std::size_t trial = 0;
  std::string metric;
  double value = 0.0;
};

using Metrics = std::vector<std::pair<std::string, double>>;
using TrialFn = std::function<Metrics(const GridCell& cell, RngStream& rng)>;

// Runs every (cell, trial). Trial t of cell c draws from
// RngStream(seed, c).Substream(t), so results do not depend on the thread
// count or completion order. Rows come back ordered by (cell, trial) and
// then by metric order within a trial. The first exception thrown by a
// trial is rethrown after the workers stop.
std::vector<ResultRow> run_grid(const ExperimentConfig& cfg, const TrialFn& fn);

// cell,n,d,s,eps,delta,trial,metric,value
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

struct SummaryRow {
  std::size_t cell = 0;
  GridCell params;
  std::string metric;
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

// One row per (cell, metric), in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

// cell,n,d,s,eps,delta,metric,count,mean,median,q25,q75
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Linear-interpolated quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> v, double q);
inline double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

}  // namespace sparsedp::harness

#endif  // SPARSEDP_HARNESS_GRID_H_
