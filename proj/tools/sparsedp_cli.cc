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

// sparsedp: experiment harness.
//
// Every subcommand reads a flat key = value config (--config), applies
// --set key=value and --grid key=v1,v2 overrides, runs the grid and writes
// one CSV row per (cell, trial, metric) to --out (stdout by default) and a
// summary next to it. Exit codes: 0 ok, 1 usage, 2 runtime failure,
// 3 a --check failed.

#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparsedp/boosting.h"
#include "sparsedp/error.h"
#include "sparsedp/exp_mechanism.h"
#include "sparsedp/geometry.h"
#include "sparsedp/hard_instances.h"
#include "sparsedp/harness/calibration.h"
#include "sparsedp/harness/config.h"
#include "sparsedp/harness/csv.h"
#include "sparsedp/harness/experiments.h"
#include "sparsedp/harness/grid.h"
#include "sparsedp/harness/problems.h"
#include "sparsedp/harness/slope.h"
#include "sparsedp/mean_estimation.h"
#include "sparsedp/output_perturbation.h"

namespace {

using namespace sparsedp;
using namespace sparsedp::harness;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheck = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::uint64_t> trials;
  std::vector<std::string> grid;
  std::vector<std::string> set;
  std::string mechanism;
  std::string mode;
  std::optional<std::uint64_t> threads;
  bool check = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "Flat key = value config file");
  app->add_option("--seed", c.seed, "Master seed");
  app->add_option("--out", c.out, "Output CSV (default: stdout)");
  app->add_option("--trials", c.trials, "Trials per grid cell");
  app->add_option("--grid", c.grid, "Grid axis, key=v1,v2,...");
  app->add_option("--set", c.set, "Override any config key, key=value");
  app->add_option("--mechanism", c.mechanism, "projection | cs");
  app->add_option("--mode", c.mode, "convex | nonconvex");
  app->add_option("--threads", c.threads, "Worker threads");
  app->add_flag("--check", c.check, "Evaluate the subcommand's check; exit 3 on failure");
}

Config build_config(const Common& c) {
  Config cfg = c.config.empty() ? Config() : Config::Load(c.config);
  for (const auto& a : c.set) cfg.SetAssignment(a);
  for (const auto& a : c.grid) cfg.SetAssignment(a);
  if (c.seed) cfg.Set("seed", std::to_string(*c.seed));
  if (c.trials) cfg.Set("trials", std::to_string(*c.trials));
  if (c.threads) cfg.Set("threads", std::to_string(*c.threads));
  if (!c.mechanism.empty()) cfg.Set("mechanism", c.mechanism);
  if (!c.mode.empty()) cfg.Set("mode", c.mode);
  return cfg;
}

// Writes rows to --out (or stdout) and the summary to <out>.summary.csv.
std::vector<SummaryRow> emit(const Common& c, const std::vector<ResultRow>& rows) {
  const auto summary = summarize(rows);
  if (c.out.empty()) {
    write_results_csv(std::cout, rows);
  } else {
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    write_results_csv(f, rows);
    std::ofstream g(c.out + ".summary.csv");
    write_summary_csv(g, summary);
  }
  for (const auto& s : summary) {
    std::cerr << "cell " << s.cell << " n=" << s.params.n << " d=" << s.params.d
              << " s=" << s.params.s << " eps=" << s.params.eps
              << " delta=" << s.params.delta << " " << s.metric
              << ": median " << s.median << " mean " << s.mean << "\n";
  }
  return summary;
}

std::vector<double> metric_values(const std::vector<ResultRow>& rows,
                                  const std::string& metric) {
  std::vector<double> v;
  for (const auto& r : rows) {
    if (r.metric == metric) v.push_back(r.value);
  }
  return v;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

int report_check(bool pass, const std::string& what) {
  std::cerr << (pass ? "CHECK PASS: " : "CHECK FAIL: ") << what << "\n";
  return pass ? kExitOk : kExitCheck;
}

// Slope of the median metric against n, when the grid has three n values.
std::optional<SlopeFit> slope_vs_n(const std::vector<ResultRow>& rows,
                                   const std::string& metric) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& r : rows) {
    if (r.metric != metric) continue;
    x.push_back(static_cast<double>(r.params.n));
    y.push_back(r.value);
  }
  try {
    return fit_slope(x, y);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

MeanMechanism mechanism_from(const Config& cfg, const std::string& def) {
  MeanMechanism m;
  const std::string name = cfg.GetString("mechanism", def);
  m.kind = ParseMechanismKind(name);
  m.recovery.c_m = cfg.GetDouble("c_m", 1.0);
  return m;
}

HyperConstants constants_from(const Config& cfg) {
  HyperConstants k;
  k.C = cfg.GetDouble("C", k.C);
  k.C_prime = cfg.GetDouble("C_prime", k.C_prime);
  k.c_b = cfg.GetDouble("c_b", k.c_b);
  k.c_nu = cfg.GetDouble("c_nu", k.c_nu);
  return k;
}

ProblemKind problem_from(const Config& cfg, Mode mode) {
  return ParseProblemKind(cfg.GetString(
      "problem", mode == Mode::kConvex ? "sparse-least-squares" : "nonconvex-smooth"));
}

// The dataset is fixed per cell (data_seed); trials vary the algorithm.
Problem cell_problem(const Config& cfg, ProblemKind kind, const GridCell& cell) {
  RngStream data_rng(cfg.GetU64("data_seed", 1), 0);
  return make_problem(kind, cell.d, cell.s, cell.n, data_rng);
}

int cmd_mean_est(const Common& c) {
  const Config cfg = build_config(c);
  const ExperimentConfig e = make_experiment(cfg);
  const MeanMechanism mech = mechanism_from(cfg, "projection");
  TrialFn fn = [&](const GridCell& cell, RngStream& rng) {
    RngStream data_rng = rng.Substream(0);
    const Problem p = make_problem(ProblemKind::kLinear, cell.d, cell.s, cell.n,
                                   data_rng);
    const Vector zbar = dataset_mean(p.S);
    RngStream mech_rng = rng.Substream(1);
    const MechanismOutput out = estimate_mean(
        mech, zbar, {cell.eps, cell.delta}, cell.n, 1.0, cell.s, mech_rng);
    return Metrics{{"l2_error", (out.estimate - zbar).norm()},
                   {"noise_linf", out.noise_linf},
                   {"branch", static_cast<double>(out.branch)}};
  };
  const auto rows = run_grid(e, fn);
  emit(c, rows);
  if (!c.check) return kExitOk;
  const auto fit = slope_vs_n(rows, "l2_error");
  if (!fit) return report_check(false, "need three n values for the slope check");
  return report_check(std::abs(fit->slope + 0.5) <= 0.1,
                      "l2_error slope vs n = " + FormatDouble(fit->slope) +
                          " (target -0.5 +- 0.1)");
}

int cmd_sgd(const Common& c) {
  const Config cfg = build_config(c);
  const ExperimentConfig e = make_experiment(cfg);
  const Mode mode = ParseMode(cfg.GetString("mode", "convex"));
  const MeanMechanism mech = mechanism_from(cfg, "projection");
  const HyperConstants k = constants_from(cfg);
  const ProblemKind kind = problem_from(cfg, mode);
  TrialFn fn = [&](const GridCell& cell, RngStream& rng) {
    const Problem p = cell_problem(cfg, kind, cell);
    const SgdOutcome o = run_sgd_trial(p, {cell.eps, cell.delta}, mode, mech, k, rng);
    return Metrics{{"metric", o.metric},
                   {"threshold", o.threshold},
                   {"success", o.success ? 1.0 : 0.0},
                   {"T", static_cast<double>(o.T)},
                   {"eta", o.hp.eta},
                   {"budget_ok", o.budget.ok ? 1.0 : 0.0}};
  };
  const auto rows = run_grid(e, fn);
  emit(c, rows);
  if (!c.check) return kExitOk;
  const double freq = mean_of(metric_values(rows, "success"));
  const double budget = mean_of(metric_values(rows, "budget_ok"));
  return report_check(freq >= 0.43 && budget == 1.0,
                      "success frequency " + FormatDouble(freq) +
                          " (>= 0.43), budget ok fraction " + FormatDouble(budget));
}

int cmd_boost(const Common& c) {
  const Config cfg = build_config(c);
  const ExperimentConfig e = make_experiment(cfg);
  const Mode mode = ParseMode(cfg.GetString("mode", "convex"));
  const MeanMechanism mech = mechanism_from(cfg, "projection");
  const HyperConstants k = constants_from(cfg);
  const ProblemKind kind = problem_from(cfg, mode);
  const double beta = cfg.GetDouble("beta", 0.1);
  TrialFn fn = [&](const GridCell& cell, RngStream& rng) {
    const Problem p = cell_problem(cfg, kind, cell);
    const BoostOutcome o =
        run_boost_trial(p, {cell.eps, cell.delta}, beta, mode, mech, k, rng);
    return Metrics{{"metric", o.metric},
                   {"threshold", o.threshold},
                   {"success", o.success ? 1.0 : 0.0},
                   {"runs", static_cast<double>(o.runs)},
                   {"inner_successes", static_cast<double>(o.inner_successes)}};
  };
  const auto rows = run_grid(e, fn);
  emit(c, rows);
  if (!c.check) return kExitOk;
  const double freq = mean_of(metric_values(rows, "success"));
  return report_check(freq >= 1 - beta - 0.07,
                      "boosted success frequency " + FormatDouble(freq) +
                          " (>= " + FormatDouble(1 - beta - 0.07) + ")");
}

int cmd_output_pert(const Common& c) {
  const Config cfg = build_config(c);
  const ExperimentConfig e = make_experiment(cfg);
  const ProblemKind kind = ParseProblemKind(cfg.GetString("problem", "linear"));
  const LambdaRegime regime =
      ParseLambdaRegime(cfg.GetString("lambda_regime", "erm-approx"));
  const double beta = cfg.GetDouble("beta", 0.1);
  TrialFn fn = [&](const GridCell& cell, RngStream& rng) {
    RngStream data_rng = rng.Substream(0);
    const Problem p = make_problem(kind, cell.d, cell.s, cell.n, data_rng);
    const PrivacyParams pp{cell.eps, cell.delta};
    const double lambda = cfg.Has("lambda")
                              ? cfg.GetDouble("lambda", 1.0)
                              : lambda_recommend(*p.loss, cell.n, pp, beta, regime);
    RngStream noise_rng = rng.Substream(1);
    const OutputPerturbationResult r =
        output_perturbation(p.S, pp, lambda, *p.loss, p.X, noise_rng);
    const double dev = (r.x_hat - r.x_star).lpNorm<Eigen::Infinity>();
    return Metrics{{"excess", utility_metric(p, r.x_hat, Mode::kConvex)},
                   {"lambda", lambda},
                   {"linf_dev", dev},
                   {"pathwise_ok", dev <= 2 * r.noise_linf + 1e-9 ? 1.0 : 0.0}};
  };
  const auto rows = run_grid(e, fn);
  emit(c, rows);
  if (!c.check) return kExitOk;
  const double ok = mean_of(metric_values(rows, "pathwise_ok"));
  const auto fit = slope_vs_n(rows, "excess");
  const bool slope_ok = fit && std::abs(fit->slope + 0.5) <= 0.1;
  return report_check(ok == 1.0 && slope_ok,
                      "pathwise ok fraction " + FormatDouble(ok) + ", excess slope " +
                          (fit ? FormatDouble(fit->slope) : std::string("n/a")));
}

int cmd_exp_mech(const Common& c) {
  const Config cfg = build_config(c);
  const ExperimentConfig e = make_experiment(cfg);
  const double beta = cfg.GetDouble("beta", 0.1);
  const std::size_t cap = cfg.GetU64("cap", 200000);
  TrialFn fn = [&](const GridCell& cell, RngStream& rng) {
    RngStream data_rng = rng.Substream(0);
    const Problem p = make_problem(ProblemKind::kLinear, cell.d, cell.s, cell.n,
                                   data_rng);
    ExpMechanismOptions o;
    o.cap = cap;
    if (cfg.Has("tau")) o.tau = cfg.GetDouble("tau", 1.0);
    o.tau_options.literal = cfg.GetBool("literal_tau", false);
    o.literal_weight = cfg.GetBool("literal_weight", false);
    RngStream mech_rng = rng.Substream(1);
    const ExpMechanismResult r =
        sparse_exp_mechanism(p.S, cell.eps, beta, *p.loss, p.X, mech_rng, o);
    // Sparsification at the same tau.
    const Vector xt = sparsify_threshold(*p.x_star, r.tau);
    const double gap = empirical_risk(*p.loss, p.S, xt) - p.f_star;
    const double bound = p.loss->constants().L *
                         std::sqrt(static_cast<double>(cell.s)) * r.tau;
    return Metrics{{"excess", utility_metric(p, r.x, Mode::kConvex)},
                   {"tau", r.tau},
                   {"net_size", static_cast<double>(r.net.points.size())},
                   {"sparsify_gap", gap},
                   {"sparsify_ok", gap <= bound ? 1.0 : 0.0}};
  };
  const auto rows = run_grid(e, fn);
  emit(c, rows);
  if (!c.check) return kExitOk;
  const double ok = mean_of(metric_values(rows, "sparsify_ok"));
  return report_check(ok == 1.0, "sparsification bound held in fraction " +
                                     FormatDouble(ok));
}

int cmd_hard_instance(const Common& c) {
  const Config cfg = build_config(c);
  const ExperimentConfig e = make_experiment(cfg);
  TrialFn fn = [&](const GridCell& cell, RngStream& rng) {
    RngStream pack_rng = rng.Substream(0);
    const Packing P = greedy_sparse_packing(cell.s, cell.d, pack_rng);
    RngStream data_rng = rng.Substream(1);
    const HardDataset h = packing_hard_dataset(P, cell.n, data_rng);
    const Vector zbar = dataset_mean(h.S);
    RngStream mech_rng = rng.Substream(2);
    const MechanismOutput out = projection_mechanism(
        zbar, {cell.eps, cell.delta}, cell.n, 1.0, cell.s, mech_rng);
    const bool bound_ok = !P.exhaustive ||
                          static_cast<double>(P.points.size()) >=
                              packing_lower_bound(cell.s, cell.d);
    return Metrics{{"packing_size", static_cast<double>(P.points.size())},
                   {"min_pairwise_l2", P.min_pairwise_l2},
                   {"exhaustive", P.exhaustive ? 1.0 : 0.0},
                   {"size_bound_ok", bound_ok ? 1.0 : 0.0},
                   {"l2_error", (out.estimate - zbar).norm()}};
  };
  const auto rows = run_grid(e, fn);
  emit(c, rows);
  if (!c.check) return kExitOk;
  bool ok = true;
  for (double v : metric_values(rows, "min_pairwise_l2")) {
    ok = ok && v >= 1 / std::sqrt(2.0) - 1e-12;
  }
  ok = ok && mean_of(metric_values(rows, "size_bound_ok")) == 1.0;
  return report_check(ok, "packing distance and size invariants");
}

int cmd_calibrate(const Common& c) {
  const Config cfg = build_config(c);
  CalibrationSettings st;
  st.stop_n = cfg.GetU64("stop_n", st.stop_n);
  st.stop_delta = cfg.GetDouble("stop_delta", st.stop_delta);
  st.stop_trials = cfg.GetU64("stop_trials", st.stop_trials);
  st.target_prob = cfg.GetDouble("target_prob", st.target_prob);
  st.n = cfg.GetU64("n", st.n);
  st.d = cfg.GetU64("d", st.d);
  st.s = cfg.GetU64("s", st.s);
  st.pp.eps = cfg.GetDouble("eps", st.pp.eps);
  st.pp.delta = cfg.GetDouble("delta", st.pp.delta);
  st.runs = cfg.GetU64("runs", cfg.GetU64("trials", st.runs));
  st.data_seed = cfg.GetU64("data_seed", st.data_seed);
  const CalibrationTable t = calibrate_constants(st, cfg.GetU64("seed", 0));
  if (c.out.empty()) {
    write_calibration_table(std::cout, t);
  } else {
    std::ofstream f(c.out);
    write_calibration_table(f, t);
  }
  if (cfg.Has("header_out")) {
    std::ofstream h(cfg.GetString("header_out", ""));
    write_constants_header(h, t);
  }
  if (!c.check) return kExitOk;
  return report_check(t.ok, "calibration targets met");
}

int cmd_slope(const Common& c, const std::string& csv, const std::string& x_col,
              const std::string& y_col, const std::string& metric,
              std::optional<double> expect, double tol) {
  std::ifstream in(csv);
  if (!in) throw UsageError("cannot open " + csv);
  const SlopeFit f = fit_slope_csv(
      in, x_col, y_col, metric.empty() ? std::nullopt : std::optional(metric));
  std::cout << "slope,std_error,intercept,points\n"
            << FormatDouble(f.slope) << ',' << FormatDouble(f.std_error) << ','
            << FormatDouble(f.intercept) << ',' << f.x.size() << "\n";
  if (!c.check) return kExitOk;
  if (!expect) throw UsageError("--check needs --expect");
  return report_check(std::abs(f.slope - *expect) <= tol,
                      "slope " + FormatDouble(f.slope) + " vs " +
                          FormatDouble(*expect) + " +- " + FormatDouble(tol));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsedp experiment harness"};
  app.require_subcommand(1);

  Common common;
  struct Sub {
    const char* name;
    const char* help;
    std::function<int(const Common&)> run;
  };
  const std::vector<Sub> subs = {
      {"mean-est", "Private sparse mean estimation", cmd_mean_est},
      {"sgd", "Bias-reduced private SGD", cmd_sgd},
      {"boost", "Confidence boosting over SGD runs", cmd_boost},
      {"output-pert", "Regularized output perturbation", cmd_output_pert},
      {"exp-mech", "Sparse exponential mechanism", cmd_exp_mech},
      {"hard-instance", "Packing hard instances", cmd_hard_instance},
      {"calibrate", "Calibrate C' and C", cmd_calibrate},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> registered;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    add_common(sc, common);
    registered.emplace_back(sc, &s);
  }
  std::string csv, x_col = "n", y_col = "value", metric;
  std::optional<double> expect;
  double tol = 0.1;
  CLI::App* slope = app.add_subcommand("slope", "Log-log slope of medians in a CSV");
  add_common(slope, common);
  slope->add_option("csv", csv, "Input CSV")->required();
  slope->add_option("--x", x_col, "x column");
  slope->add_option("--y", y_col, "y column");
  slope->add_option("--metric", metric, "Keep rows with this metric");
  slope->add_option("--expect", expect, "Expected slope for --check");
  slope->add_option("--tol", tol, "Tolerance for --check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (slope->parsed()) {
      return cmd_slope(common, csv, x_col, y_col, metric, expect, tol);
    }
    for (const auto& [sc, s] : registered) {
      if (sc->parsed()) return s->run(common);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
