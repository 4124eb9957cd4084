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

#include "sparsedp/harness/grid.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "sparsedp/error.h"
#include "sparsedp/harness/csv.h"

namespace sparsedp::harness {

namespace {

std::vector<std::string> cell_fields(std::size_t cell, const GridCell& p) {
  return {std::to_string(cell), std::to_string(p.n), std::to_string(p.d),
          std::to_string(p.s), FormatDouble(p.eps), FormatDouble(p.delta)};
}

std::vector<std::size_t> size_list(const Config& c, const std::string& key,
                                   std::size_t def) {
  std::vector<std::size_t> out;
  for (double v : c.GetDoubleList(key, {static_cast<double>(def)})) {
    SPARSEDP_REQUIRE(v >= 0 && v == std::floor(v),
                     "grid: " + key + " must be a nonnegative integer");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace

ExperimentConfig make_experiment(const Config& c) {
  ExperimentConfig e;
  e.raw = c;
  e.trials = c.GetU64("trials", 1);
  e.seed = c.GetU64("seed", 0);
  e.threads = std::max<std::uint64_t>(1, c.GetU64("threads", 1));
  SPARSEDP_REQUIRE(e.trials >= 1, "grid: trials must be at least 1");
  const auto ns = size_list(c, "n", 1024);
  const auto ds = size_list(c, "d", 1024);
  const auto ss = size_list(c, "s", 8);
  const auto eps = c.GetDoubleList("eps", {1.0});
  const auto deltas = c.GetDoubleList("delta", {1e-6});
  for (auto n : ns) {
    for (auto d : ds) {
      for (auto s : ss) {
        for (double ep : eps) {
          for (double de : deltas) e.cells.push_back({n, d, s, ep, de});
        }
      }
    }
  }
  SPARSEDP_REQUIRE(!e.cells.empty(), "grid: empty grid");
  return e;
}

std::vector<ResultRow> run_grid(const ExperimentConfig& cfg, const TrialFn& fn) {
  SPARSEDP_REQUIRE(!cfg.cells.empty() && cfg.trials >= 1,
                   "run_grid: need a nonempty grid and trials >= 1");
  const std::size_t tasks = cfg.cells.size() * cfg.trials;
  std::vector<Metrics> out(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks) return;
      const std::size_t cell = k / cfg.trials;
      const std::size_t trial = k % cfg.trials;
      try {
        RngStream rng = RngStream(cfg.seed, cell).Substream(trial);
        out[k] = fn(cfg.cells[cell], rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };
  const std::size_t nthreads = std::min(cfg.threads, tasks);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<ResultRow> rows;
  for (std::size_t k = 0; k < tasks; ++k) {
    const std::size_t cell = k / cfg.trials;
    for (const auto& [metric, value] : out[k]) {
      rows.push_back({cell, cfg.cells[cell], k % cfg.trials, metric, value});
    }
  }
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  CsvWriter w(out, {"cell", "n", "d", "s", "eps", "delta", "trial", "metric",
                    "value"});
  for (const auto& r : rows) {
    auto f = cell_fields(r.cell, r.params);
    f.push_back(std::to_string(r.trial));
    f.push_back(r.metric);
    f.push_back(FormatDouble(r.value));
    w.Row(f);
  }
}

double quantile(std::vector<double> v, double q) {
  SPARSEDP_REQUIRE(!v.empty(), "quantile: empty sample");
  SPARSEDP_REQUIRE(q >= 0 && q <= 1, "quantile: q in [0, 1]");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::map<std::pair<std::size_t, std::string>, std::size_t> index;
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.cell, r.metric);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      SummaryRow s;
      s.cell = r.cell;
      s.params = r.params;
      s.metric = r.metric;
      out.push_back(s);
      values.emplace_back();
    }
    values[it->second].push_back(r.value);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& v = values[i];
    out[i].count = v.size();
    double sum = 0.0;
    for (double x : v) sum += x;
    out[i].mean = sum / static_cast<double>(v.size());
    out[i].median = quantile(v, 0.5);
    out[i].q25 = quantile(v, 0.25);
    out[i].q75 = quantile(v, 0.75);
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  CsvWriter w(out, {"cell", "n", "d", "s", "eps", "delta", "metric", "count",
                    "mean", "median", "q25", "q75"});
  for (const auto& r : rows) {
    auto f = cell_fields(r.cell, r.params);
    f.push_back(r.metric);
    f.push_back(std::to_string(r.count));
    for (double v : {r.mean, r.median, r.q25, r.q75}) f.push_back(FormatDouble(v));
    w.Row(f);
  }
}

}  // namespace sparsedp::harness
