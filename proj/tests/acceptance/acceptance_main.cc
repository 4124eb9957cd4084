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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. `--only 3,7` runs a subset.

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "common/oracles.h"
#include "sparsedp/bias_reduction.h"
#include "sparsedp/boosting.h"
#include "sparsedp/calibrated_constants.h"
#include "sparsedp/error.h"
#include "sparsedp/exp_mechanism.h"
#include "sparsedp/geometry.h"
#include "sparsedp/hard_instances.h"
#include "sparsedp/harness/experiments.h"
#include "sparsedp/harness/grid.h"
#include "sparsedp/harness/problems.h"
#include "sparsedp/harness/slope.h"
#include "sparsedp/hyperparams.h"
#include "sparsedp/loss.h"
#include "sparsedp/mean_estimation.h"
#include "sparsedp/noise.h"
#include "sparsedp/output_perturbation.h"
#include "sparsedp/pathwise.h"
#include "sparsedp/privacy_filter.h"
#include "sparsedp/rng.h"
#include "sparsedp/sgd.h"

namespace sparsedp {
namespace {

using harness::fit_slope;
using harness::make_problem;
using harness::Problem;
using harness::ProblemKind;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// Every SGD run made by any criterion reports here; criterion 6 reads it.
struct BudgetLedger {
  std::size_t runs = 0;
  std::size_t violations = 0;
  std::string first_failure;

  void Record(const BudgetReport& b) {
    ++runs;
    if (!b.ok) Fail(b.detail);
  }
  void Fail(const std::string& why) {
    ++violations;
    if (first_failure.empty()) first_failure = why;
  }
};
BudgetLedger g_budget;

MeanMechanism Projection() {
  MeanMechanism m;
  m.kind = MechanismKind::kProjection;
  return m;
}

// Runs SGD and feeds the budget ledger; a run that trips the internal budget
// assertion counts as a violation and yields nullopt.
std::optional<RunTrace> TracedRun(const Problem& p, const PrivacyParams& pp,
                                  double eta, Mode mode, RngStream& rng,
                                  bool record = true) {
  SgdConfig cfg;
  cfg.mechanism = Projection();
  cfg.record_trace = record;
  try {
    RunTrace tr = run_bias_reduced_sgd(p.S, p.x0, pp, eta, *p.loss, p.X, mode,
                                       rng, cfg);
    g_budget.Record(budget_at_halt(tr));
    return tr;
  } catch (const InternalConsistencyError& e) {
    ++g_budget.runs;
    g_budget.Fail(e.what());
    return std::nullopt;
  }
}

Outcome ProjectionBound() {
  const std::size_t d = 1024, s = 8, n = 256;
  const double L = 1.0;
  RngStream rng(101, 0);
  int violations = 0, runs = 0;
  double worst = -INFINITY;
  for (int t = 0; t < 1000; ++t) {
    RngStream r = rng.Substream(t);
    RngStream data = r.Substream(0);
    const Problem p = make_problem(ProblemKind::kLinear, d, s, n, data);
    const Vector zbar = dataset_mean(p.S);
    const PrivacyParams pp{1.0, t < 500 ? 0.0 : 1e-6};
    RngStream mr = r.Substream(1);
    ++runs;
    try {
      const MechanismOutput out = projection_mechanism(zbar, pp, n, L, s, mr);
      const double err = (out.estimate - zbar).norm();
      const double bound = std::sqrt(2 * L * std::sqrt(double(s)) * out.noise_linf);
      worst = std::max(worst, err - bound);
      if (err > bound + 1e-7) ++violations;
    } catch (const InternalConsistencyError&) {
      ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " +
                               std::to_string(runs) + " runs, max err - bound " +
                               Fmt(worst)};
}

Outcome L1ProjectionOracles() {
  RngStream rng(102, 0);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t d = 1 + rng.UniformInt(4);
    Vector v(d);
    const double spread = std::exp(3 * rng.Uniform() - 1.5);
    for (std::size_t j = 0; j < d; ++j) v[j] = spread * rng.StandardNormal();
    // Ties and zeros stress the threshold search.
    if (rng.Bernoulli(0.2)) v[0] = v[d - 1];
    if (rng.Bernoulli(0.1)) v[rng.UniformInt(d)] = 0.0;
    const double r = std::exp(2 * rng.Uniform() - 1);
    const Vector got = project_l1_ball(v, r).point;
    worst = std::max(worst, (got - testing::L1ProjectionKkt(v, r)).lpNorm<Eigen::Infinity>());
    worst = std::max(worst,
                     (got - testing::L1ProjectionBruteForce(v, r)).lpNorm<Eigen::Infinity>());
  }
  return {worst <= 1e-6, "max deviation " + Fmt(worst) + " over 10000 inputs"};
}

Outcome TGeomCorrectness() {
  RngStream rng(103, 0);
  std::string detail;
  bool pass = true;
  for (int M : {0, 1, 6}) {
    // Exact sum of the rational pmf.
    std::uint64_t num = 0, den = 1;
    for (int k = 0; k <= M; ++k) {
      const Rational p = tgeom_pmf_exact(M, k);
      const std::uint64_t l = std::lcm(den, p.den);
      num = num * (l / den) + p.num * (l / p.den);
      den = l;
      const std::uint64_t g = std::gcd(num, den);
      num /= g;
      den /= g;
    }
    const bool exact = num == 1 && den == 1;
    const std::size_t draws = 1000000;
    std::vector<std::size_t> hits(M + 1, 0);
    RngStream r = rng.Substream(M);
    for (std::size_t i = 0; i < draws; ++i) ++hits.at(tgeom_sample(M, r));
    double worst_z = 0.0;
    for (int k = 0; k <= M; ++k) {
      const double p = tgeom_pmf(M, k);
      const double se = testing::BinomialSe(p, draws);
      const double dev = std::abs(double(hits[k]) / draws - p);
      worst_z = std::max(worst_z, se > 0 ? dev / se : (dev > 0 ? INFINITY : 0.0));
    }
    pass = pass && exact && worst_z <= 4.0;
    detail += "M=" + std::to_string(M) + (exact ? " sum=1" : " sum!=1") +
              " max|z|=" + Fmt(worst_z) + "; ";
  }
  return {pass, detail};
}

Dataset SignDataset(RngStream& r, std::size_t n, std::size_t d, std::size_t s) {
  Dataset S;
  S.bounds = {d, s, 1.0};
  for (std::size_t i = 0; i < n; ++i) S.points.push_back(harness::random_sparse_sign_vector(d, s, r));
  return S;
}

Outcome DebiasingIdentity() {
  bool pass = true;
  std::string detail;

  // Exact enumeration with the noiseless hook. Every ordered batch of a given
  // size is equally likely, so E[G] is a finite weighted sum.
  {
    RngStream r(104, 0);
    const std::size_t n = 4, d = 6, s = 2;
    Dataset S = SignDataset(r, n, d, s);
    for (std::size_t i = 0; i < n; ++i) S.labels.push_back(r.StandardNormal());
    LossConstants c;
    c.L = 3.0;
    c.s = s;
    c.d = d;
    SquaredLoss loss(c);
    const Vector x = (Vector(d) << 0.1, -0.2, 0.3, 0.0, 0.5, -0.1).finished();
    MeanMechanism mech;
    mech.kind = MechanismKind::kNoiseless;
    const int M = truncation_level(n);
    Vector expect = Vector::Zero(d);
    for (int N = 0; N <= M; ++N) {
      const std::size_t k = std::size_t{2} << N;
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::set<std::vector<std::size_t>> prefixes;
      do {
        prefixes.emplace(perm.begin(), perm.begin() + k);
      } while (std::next_permutation(perm.begin(), perm.end()));
      const double w = tgeom_pmf(M, N) / double(prefixes.size()) / double(n);
      for (const auto& pre : prefixes) {
        for (std::size_t I = 0; I < n; ++I) {
          BatchDraw b;
          b.N = N;
          b.B = pre;
          b.O.assign(pre.begin(), pre.begin() + k / 2);
          b.E.assign(pre.begin() + k / 2, pre.end());
          b.I = I;
          expect += w * bias_reduced_gradient(x, S, b, {1.0, 1e-6}, loss, mech, r).g;
        }
      }
    }
    const double err =
        (expect - empirical_gradient(loss, S, x)).lpNorm<Eigen::Infinity>();
    pass = pass && err <= 1e-12;
    detail += "enumeration err " + Fmt(err) + "; ";
  }

  // Monte Carlo against the full-batch mechanism.
  const std::size_t n = 256, d = 8, s = 2;
  const int reps = 100000;
  RngStream r(105, 0);
  RngStream data = r.Substream(0);
  const Problem p = make_problem(ProblemKind::kLinear, d, s, n, data);
  const Vector x = Vector::Zero(d);
  const Vector grad = empirical_gradient(*p.loss, p.S, x);
  const double L = p.loss->constants().L;

  struct Case {
    std::string name;
    MeanMechanism mech;
    PrivacyParams pp;
  };
  MeanMechanism recovery;
  recovery.kind = MechanismKind::kGaussianRecovery;
  const std::vector<Case> cases = {{"projection-laplace", Projection(), {1.0, 0.0}},
                                   {"projection-gaussian", Projection(), {1.0, 1e-6}},
                                   {"recovery", recovery, {1.0, 1e-6}}};
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const Case& c = cases[ci];
    RngStream est_rng = r.Substream(10 + ci);
    RngStream ref_rng = r.Substream(20 + ci);
    Vector sum = Vector::Zero(d), sq = Vector::Zero(d);
    Vector ref = Vector::Zero(d), ref_sq = Vector::Zero(d);
    for (int t = 0; t < reps; ++t) {
      // The estimator reads fixed substreams of its stream; use a fresh one.
      RngStream rr = est_rng.Substream(t);
      const BatchDraw b = sample_batches(n, truncation_level(n), rr);
      const Vector g = bias_reduced_gradient(x, p.S, b, c.pp, *p.loss, c.mech, rr).g;
      sum += g;
      sq += g.cwiseProduct(g);
      const Vector a = estimate_mean(c.mech, grad, {c.pp.eps / 4, c.pp.delta / 4},
                                     n, L, s, ref_rng)
                           .estimate;
      ref += a;
      ref_sq += a.cwiseProduct(a);
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double m1 = sum[j] / reps, m2 = ref[j] / reps;
      const double v1 = sq[j] / reps - m1 * m1, v2 = ref_sq[j] / reps - m2 * m2;
      const double se = std::sqrt((v1 + v2) / reps);
      worst = std::max(worst, std::abs(m1 - m2) / se);
    }
    pass = pass && worst <= 3.0;
    detail += c.name + " max|z|=" + Fmt(worst) + "; ";
  }
  return {pass, detail};
}

Outcome StoppingTime() {
  RngStream rng(106, 0);
  const StoppingTimeStats st =
      stopping_time_stats(1024, 1e-8, 500, rng, calibrated::kStoppingCPrime);
  const bool mean_ok =
      st.mean >= 0.9 * st.lower_bound && st.mean <= 1.1 * st.upper_bound;
  const bool prob_ok = st.prob_below_threshold <= 0.30;
  return {mean_ok && prob_ok,
          "E[T]=" + Fmt(st.mean) + " in [" + Fmt(0.9 * st.lower_bound) + ", " +
              Fmt(1.1 * st.upper_bound) + "], P[T<=" + Fmt(st.threshold) +
              "]=" + Fmt(st.prob_below_threshold)};
}

Outcome PathwiseSgd() {
  const std::size_t d = 64, s = 4, n = 256;
  const PrivacyParams pp{1.0, 1e-6};
  int convex_ok = 0, convex_runs = 0, nc_ok = 0, nc_runs = 0;
  RngStream rng(107, 0);
  for (ProblemKind kind : {ProblemKind::kSparseLeastSquares, ProblemKind::kLinear}) {
    RngStream data = rng.Substream(kind == ProblemKind::kLinear ? 1 : 0);
    const Problem p = make_problem(kind, d, s, n, data);
    const double eta = recommended_hyperparams(*p.loss, n, pp, Mode::kConvex).eta;
    for (int t = 0; t < 250; ++t) {
      RngStream r = rng.Substream(100 + 1000 * convex_runs / 250 + t);
      ++convex_runs;
      const auto tr = TracedRun(p, pp, eta, Mode::kConvex, r);
      if (tr && check_pathwise_regret(*tr, *p.loss, p.S, *p.x_star).holds) ++convex_ok;
    }
  }
  RngStream data = rng.Substream(2);
  const Problem p = make_problem(ProblemKind::kNonconvexSmooth, d, s, n, data);
  const double H = *p.loss->constants().H;
  const double eta = std::min(
      recommended_hyperparams(*p.loss, n, pp, Mode::kNonconvex).eta, 1 / (2 * H));
  for (int t = 0; t < 500; ++t) {
    RngStream r = rng.Substream(5000 + t);
    ++nc_runs;
    const auto tr = TracedRun(p, pp, eta, Mode::kNonconvex, r);
    if (tr && check_pathwise_stationarity(*tr, *p.loss, p.S).realized.holds) ++nc_ok;
  }
  return {convex_ok == convex_runs && nc_ok == nc_runs,
          "regret " + std::to_string(convex_ok) + "/" + std::to_string(convex_runs) +
              ", stationarity " + std::to_string(nc_ok) + "/" + std::to_string(nc_runs)};
}

Outcome MeanEstimationSlope() {
  const std::size_t d = std::size_t{1} << 15, s = 8;
  const PrivacyParams pp{1.0, 1e-6};
  RngStream rng(108, 0);
  std::vector<double> xs, ys;
  for (int e = 8; e <= 13; ++e) {
    const std::size_t n = std::size_t{1} << e;
    for (int t = 0; t < 200; ++t) {
      RngStream r = rng.Substream(1000 * e + t);
      RngStream data = r.Substream(0);
      const Problem p = make_problem(ProblemKind::kLinear, d, s, n, data);
      const Vector zbar = dataset_mean(p.S);
      RngStream mr = r.Substream(1);
      const MechanismOutput out = projection_mechanism(zbar, pp, n, 1.0, s, mr);
      xs.push_back(double(n));
      ys.push_back((out.estimate - zbar).norm());
    }
  }
  const auto fit = fit_slope(xs, ys);
  return {std::abs(fit.slope + 0.5) <= 0.1,
          "slope " + Fmt(fit.slope) + " (se " + Fmt(fit.std_error) + ")"};
}

Outcome CompressedSensing() {
  const std::size_t s = 4, d = 256;
  const std::size_t m = std::ceil(8 * s * std::log(double(d) / s));
  RecoveryConfig cfg;
  cfg.m_override = m;
  cfg.zero_measurement_noise = true;
  cfg.force_compressed_sensing = true;
  RngStream rng(109, 0);
  int ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    RngStream r = rng.Substream(t);
    Vector z = Vector::Zero(d);
    for (auto j : r.SampleWithoutReplacement(d, s)) z[j] = r.StandardNormal();
    z *= (0.05 + 0.95 * r.Uniform()) / z.norm();
    const MechanismOutput out = gaussian_l1_recovery(z, {1.0, 1e-6}, 1000, 1.0, s, d, cfg, r);
    const double err = (out.estimate - z).norm();
    worst = std::max(worst, err);
    if (err < 1e-5 && out.branch == MechanismBranch::kCompressedSensing) ++ok;
  }
  return {ok >= 95, std::to_string(ok) + "/100 exact with m=" + std::to_string(m) +
                        ", max err " + Fmt(worst)};
}

// The sparse-least-squares benchmark used by calibration (data seed 1).
const Problem& Benchmark() {
  static const Problem p = [] {
    RngStream data(1, 0);
    return make_problem(ProblemKind::kSparseLeastSquares, 4096, 4, 4096, data);
  }();
  return p;
}

Outcome ConvexSuccess() {
  const Problem& p = Benchmark();
  RngStream rng(110, 0);
  int wins = 0;
  const int runs = 200;
  for (int t = 0; t < runs; ++t) {
    RngStream r = rng.Substream(t);
    try {
      const auto o = harness::run_sgd_trial(p, {1.0, 1e-8}, Mode::kConvex,
                                            Projection(), HyperConstants{}, r);
      g_budget.Record(o.budget);
      wins += o.success ? 1 : 0;
    } catch (const InternalConsistencyError& e) {
      ++g_budget.runs;
      g_budget.Fail(e.what());
    }
  }
  const double freq = double(wins) / runs;
  return {freq >= 0.43, "success " + std::to_string(wins) + "/" + std::to_string(runs) +
                            " = " + Fmt(freq)};
}

Outcome Boosting() {
  const Problem& p = Benchmark();
  RngStream rng(111, 0);
  int wins = 0;
  std::size_t inner_runs = 0;
  const int runs = 200;
  for (int t = 0; t < runs; ++t) {
    RngStream r = rng.Substream(t);
    try {
      const auto o = harness::run_boost_trial(p, {1.0, 1e-8}, 0.1, Mode::kConvex,
                                              Projection(), HyperConstants{}, r);
      wins += o.success ? 1 : 0;
      inner_runs += o.runs;
      g_budget.runs += o.runs;
      for (std::size_t v = 0; v < o.sgd_budget_violations; ++v)
        g_budget.Fail("boosting inner run");
    } catch (const InternalConsistencyError& e) {
      ++g_budget.runs;
      g_budget.Fail(e.what());
    }
  }
  const double freq = double(wins) / runs;
  return {freq >= 0.83, "boosted success " + std::to_string(wins) + "/" +
                            std::to_string(runs) + " = " + Fmt(freq) + ", inner runs " +
                            std::to_string(inner_runs)};
}

Outcome OutputPerturbation() {
  const std::size_t d = 1024, s = 8;
  const PrivacyParams pp{1.0, 1e-6};
  RngStream rng(112, 0);
  std::vector<double> xs, ys;
  int bad = 0, runs = 0;
  for (int e = 8; e <= 13; ++e) {
    const std::size_t n = std::size_t{1} << e;
    for (int t = 0; t < 200; ++t) {
      RngStream r = rng.Substream(1000 * e + t);
      RngStream data = r.Substream(0);
      const Problem p = make_problem(ProblemKind::kLinear, d, s, n, data);
      const double lambda =
          lambda_recommend(*p.loss, n, pp, 0.1, LambdaRegime::kErmApprox);
      RngStream nr = r.Substream(1);
      const auto res = output_perturbation(p.S, pp, lambda, *p.loss, p.X, nr);
      const double dev = (res.x_hat - res.x_star).lpNorm<Eigen::Infinity>();
      ++runs;
      if (dev > 2 * res.noise_linf + 1e-9) ++bad;
      xs.push_back(double(n));
      ys.push_back(harness::utility_metric(p, res.x_hat, Mode::kConvex));
    }
  }
  const auto fit = fit_slope(xs, ys);
  return {bad == 0 && std::abs(fit.slope + 0.5) <= 0.1,
          std::to_string(bad) + "/" + std::to_string(runs) +
              " pathwise violations, excess slope " + Fmt(fit.slope)};
}

// Pearson chi-square with adjacent bins merged until each expects >= 5.
double ChiSquarePValue(const std::vector<double>& probs,
                       const std::vector<std::size_t>& counts, std::size_t draws) {
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return probs[a] < probs[b]; });
  std::vector<std::pair<double, double>> bins;  // expected, observed
  double e = 0, o = 0;
  for (auto i : order) {
    e += probs[i] * draws;
    o += counts[i];
    if (e >= 5) {
      bins.emplace_back(e, o);
      e = o = 0;
    }
  }
  if (e > 0 || o > 0) {
    if (bins.empty()) bins.emplace_back(0, 0);
    bins.back().first += e;
    bins.back().second += o;
  }
  if (bins.size() < 2) return 1.0;
  double stat = 0;
  for (auto [ex, ob] : bins) stat += (ob - ex) * (ob - ex) / ex;
  boost::math::chi_squared dist(double(bins.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

Outcome ExponentialMechanism() {
  bool pass = true;
  std::string detail;
  {
    RngStream rng(113, 0);
    RngStream data = rng.Substream(0);
    const Problem p = make_problem(ProblemKind::kLinear, 4, 1, 64, data);
    ExpMechanismOptions o;
    o.tau = 0.75;
    RngStream r = rng.Substream(1);
    const double eps = 0.5;
    const auto first = sparse_exp_mechanism(p.S, eps, 0.1, *p.loss, p.X, r, o);
    const std::size_t size = first.probabilities.size();
    std::vector<std::size_t> counts(size, 0);
    ++counts[first.index];
    const std::size_t draws = 100000;
    for (std::size_t i = 1; i < draws; ++i)
      ++counts.at(sparse_exp_mechanism(p.S, eps, 0.1, *p.loss, p.X, r, o).index);
    const double pv = ChiSquarePValue(first.probabilities, counts, draws);
    pass = pass && size <= 200 && pv > 0.01;
    detail += std::to_string(size) + "-point net, chi2 p=" + Fmt(pv) + "; ";
  }
  {
    RngStream rng(114, 0);
    int held = 0, total = 0;
    double worst = -INFINITY;
    for (int t = 0; t < 60; ++t) {
      RngStream data = rng.Substream(t);
      const Problem p = make_problem(ProblemKind::kLinear, 6, 2, 32, data);
      const double tau = (t % 3 == 0) ? 0.45 : (t % 3 == 1 ? 0.6 : 0.75);
      const auto net = build_sparse_net(p.X, tau, 6);
      double best = INFINITY;
      for (const auto& q : net.points)
        best = std::min(best, empirical_risk(*p.loss, p.S, q.point));
      const auto& c = p.loss->constants();
      const double bound = c.L * std::sqrt(double(c.s)) * tau;
      worst = std::max(worst, best - p.f_star - bound);
      ++total;
      if (best - p.f_star <= bound) ++held;
    }
    pass = pass && held == total;
    detail += "sparsification " + std::to_string(held) + "/" + std::to_string(total) +
              ", max gap - bound " + Fmt(worst);
  }
  return {pass, detail};
}

Outcome HardInstances() {
  bool pass = true;
  std::string detail;
  RngStream rng(115, 0);
  const std::pair<std::size_t, std::size_t> cases[] = {
      {1, 4}, {2, 4}, {2, 8}, {3, 9}, {4, 12}, {4, 16}, {5, 20}, {6, 24}};
  int ok = 0;
  for (auto [s, d] : cases) {
    const Packing P = greedy_sparse_packing(s, d, rng);
    const bool good = P.exhaustive && P.min_pairwise_l2 >= 1 / std::sqrt(2.0) - 1e-12 &&
                      double(P.points.size()) >= packing_lower_bound(s, d);
    ok += good ? 1 : 0;
    if (!good) {
      detail += "(s,d)=(" + std::to_string(s) + "," + std::to_string(d) + ") size " +
                std::to_string(P.points.size()) + " min " + Fmt(P.min_pairwise_l2) + "; ";
    }
  }
  pass = pass && ok == int(std::size(cases));
  detail += "packing " + std::to_string(ok) + "/" + std::to_string(std::size(cases)) + "; ";

  struct Block {
    std::size_t n0, t, K, n, d;
  };
  int exact = 0;
  const Block blocks[] = {{8, 4, 3, 32, 16}, {16, 8, 4, 128, 64}, {4, 2, 8, 64, 16}};
  for (const Block& b : blocks) {
    const auto bd = block_diagonal_dataset(
        [&](RngStream& r) { return SignDataset(r, b.n0, b.t, 1); }, b.n0, b.t, b.K,
        b.n, b.d, rng);
    if (dataset_mean(bd.S) == block_diagonal_mean(bd.block_means, b.n0, b.n, b.d)) ++exact;
  }
  pass = pass && exact == int(std::size(blocks));
  detail += "block mean exact " + std::to_string(exact) + "/" + std::to_string(std::size(blocks));
  return {pass, detail};
}

Outcome BudgetSafety() {
  // A sweep over n and delta on top of the runs already made by 7, 10, 11.
  RngStream rng(116, 0);
  for (std::size_t n : {2, 3, 4, 5, 16, 100, 1024, 4096}) {
    RngStream data = rng.Substream(n);
    const Problem p = make_problem(ProblemKind::kLinear, 16, 2, n, data);
    for (double delta : {0.1, 1e-4, 1e-8, 1e-12}) {
      for (double eps : {0.1, 1.0, 4.0}) {
        for (int t = 0; t < 3; ++t) {
          RngStream r = rng.Substream(1000000 + n * 1000 + t);
          TracedRun(p, {eps, delta}, 0.05, Mode::kConvex, r, false);
        }
      }
    }
  }
  return {g_budget.violations == 0,
          std::to_string(g_budget.violations) + " violations over " +
              std::to_string(g_budget.runs) + " SGD runs" +
              (g_budget.first_failure.empty() ? "" : " (" + g_budget.first_failure + ")")};
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace sparsedp

int main(int argc, char** argv) {
  using namespace sparsedp;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
    } else {
      std::cerr << "usage: sparsedp_acceptance [--only 1,2,...]\n";
      return 1;
    }
  }
  // Budget safety (6) runs last so it can count every SGD run made before it.
  const std::vector<Criterion> criteria = {
      {1, "pathwise projection bound", ProjectionBound},
      {2, "l1 projection oracle equivalence", L1ProjectionOracles},
      {3, "truncated geometric correctness", TGeomCorrectness},
      {4, "debiasing identity", DebiasingIdentity},
      {5, "stopping time", StoppingTime},
      {7, "pathwise SGD inequalities", PathwiseSgd},
      {8, "mean estimation error exponent", MeanEstimationSlope},
      {9, "compressed sensing recovery", CompressedSensing},
      {10, "convex success frequency", ConvexSuccess},
      {11, "boosting amplification", Boosting},
      {12, "output perturbation", OutputPerturbation},
      {13, "sparse exponential mechanism", ExponentialMechanism},
      {14, "hard instance invariants", HardInstances},
      {6, "budget safety", BudgetSafety},
  };
  struct Line {
    int id;
    std::string text;
  };
  std::vector<Line> lines;
  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';'))
      o.detail.pop_back();
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail
       << " [" << Fmt(sec) << " s]";
    std::cerr << os.str() << std::endl;  // progress
    lines.push_back({c.id, os.str()});
    all = all && o.pass;
  }
  std::sort(lines.begin(), lines.end(), [](auto& a, auto& b) { return a.id < b.id; });
  for (const auto& l : lines) std::cout << l.text << "\n";
  return all ? 0 : 1;
}
