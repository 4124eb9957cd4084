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

#include "sparsedp/exp_mechanism.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "overloaded.h"
#include "sparsedp/error.h"

namespace sparsedp {

namespace {

constexpr double kGridSlack = 1e-9;

double tau_residual(double tau, double d, double beta) {
  return tau * tau * tau / std::log(d / (tau * beta));
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    r *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return std::round(r);
}

// Advances c to the next k-subset of [0, n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double sup_l2(const FeasibleSet& X) {
  return std::visit(
      internal::Overloaded{
          [](const Unconstrained&) {
            return std::numeric_limits<double>::infinity();
          },
          [](const L2Ball& b) { return b.radius; },
          [](const L1Ball& b) { return b.radius; },
          [](const Box& b) {
            return b.lo.cwiseAbs().cwiseMax(b.hi.cwiseAbs()).norm();
          }},
      X);
}

// Ball variants: the admissible nonzero patterns do not depend on the
// support, only on its size. A pattern is a sequence of nonzero integers a
// with sum |a|^p <= budget, where p = 2 (l2) or 1 (l1) and the point is h a.
struct BallGrid {
  int power = 2;
  long long budget = 0;
  long long max_level = 0;

  long long cost(long long a) const { return power == 2 ? a * a : a; }
};

BallGrid make_ball_grid(const FeasibleSet& X, double h) {
  BallGrid g;
  if (const auto* b = std::get_if<L2Ball>(&X)) {
    g.power = 2;
    const double r = b->radius / h;
    g.budget = static_cast<long long>(std::floor(r * r + kGridSlack));
  } else {
    const auto& b1 = std::get<L1Ball>(X);
    g.power = 1;
    g.budget = static_cast<long long>(std::floor(b1.radius / h + kGridSlack));
  }
  g.max_level = 0;
  while (g.cost(g.max_level + 1) <= g.budget) ++g.max_level;
  return g;
}

// patterns[j] = number of length-j nonzero patterns within budget.
std::vector<double> count_ball_patterns(const BallGrid& g, std::size_t k) {
  const auto B = static_cast<std::size_t>(g.budget);
  std::vector<double> cur(B + 1, 0.0);
  cur[0] = 1.0;
  std::vector<double> out{1.0};
  for (std::size_t j = 1; j <= k; ++j) {
    std::vector<double> next(B + 1, 0.0);
    for (std::size_t b = 0; b <= B; ++b) {
      if (cur[b] == 0.0) continue;
      for (long long a = 1; a <= g.max_level; ++a) {
        const auto nb = b + static_cast<std::size_t>(g.cost(a));
        if (nb > B) break;
        next[nb] += 2.0 * cur[b];  // +a and -a
      }
    }
    cur.swap(next);
    double total = 0.0;
    for (double v : cur) total += v;
    out.push_back(total);
  }
  return out;
}

void enumerate_ball_patterns(const BallGrid& g, std::size_t len,
                             std::vector<long long>& cur, long long used,
                             std::vector<std::vector<long long>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (long long a = 1; a <= g.max_level; ++a) {
    if (used + g.cost(a) > g.budget) break;
    for (long long sgn : {-1LL, 1LL}) {
      cur.push_back(sgn * a);
      enumerate_ball_patterns(g, len, cur, used + g.cost(a), out);
      cur.pop_back();
    }
  }
}

// Box: per-coordinate admissible nonzero levels.
std::vector<std::vector<long long>> box_levels(const Box& b, double h) {
  std::vector<std::vector<long long>> levels(static_cast<std::size_t>(b.lo.size()));
  for (Eigen::Index i = 0; i < b.lo.size(); ++i) {
    SPARSEDP_REQUIRE(b.lo[i] <= 0 && b.hi[i] >= 0,
                     "build_sparse_net: the box must contain the origin");
    const auto neg = static_cast<long long>(std::floor(-b.lo[i] / h + kGridSlack));
    const auto pos = static_cast<long long>(std::floor(b.hi[i] / h + kGridSlack));
    auto& l = levels[static_cast<std::size_t>(i)];
    for (long long a = neg; a >= 1; --a) l.push_back(-a);
    for (long long a = 1; a <= pos; ++a) l.push_back(a);
  }
  return levels;
}

std::size_t default_support(double tau, std::size_t d,
                            const std::optional<std::size_t>& override_k) {
  if (override_k) {
    SPARSEDP_REQUIRE(*override_k >= 1 && *override_k <= d,
                     "build_sparse_net: support size must be in [1, d]");
    return *override_k;
  }
  const double k = std::ceil(1.0 / (tau * tau) - 1e-12);
  return static_cast<std::size_t>(std::min(k, static_cast<double>(d)));
}

void check_net_inputs(const FeasibleSet& X, double tau, std::size_t d) {
  validate_feasible_set(X);
  SPARSEDP_REQUIRE(tau > 0 && std::isfinite(tau),
                   "build_sparse_net: tau must be positive");
  SPARSEDP_REQUIRE(d >= 1, "build_sparse_net: d must be positive");
  SPARSEDP_REQUIRE(is_bounded(X), "build_sparse_net: X must be bounded");
  if (const auto* b = std::get_if<Box>(&X)) {
    SPARSEDP_REQUIRE(static_cast<std::size_t>(b->lo.size()) == d,
                     "build_sparse_net: box dimension mismatch");
  }
}

}  // namespace

TauSolution solve_tau(double L, std::size_t s, std::size_t d, double B,
                      double eps, std::size_t n, double beta,
                      const TauOptions& opts) {
  SPARSEDP_REQUIRE(L > 0 && B > 0 && eps > 0, "solve_tau: need L, B, eps > 0");
  SPARSEDP_REQUIRE(s >= 1 && d >= s && n >= 1, "solve_tau: need 1 <= s <= d");
  SPARSEDP_REQUIRE(beta > 0 && beta < 1, "solve_tau: beta in (0, 1)");
  SPARSEDP_REQUIRE(opts.lo > 0 && opts.lo < opts.hi,
                   "solve_tau: invalid bracket");
  const double dd = static_cast<double>(d);
  SPARSEDP_REQUIRE(opts.hi < dd / beta, "solve_tau: bracket exceeds d/beta");
  const double lsen = L * std::sqrt(static_cast<double>(s)) * eps *
                      static_cast<double>(n);
  TauSolution sol;
  sol.target = opts.literal ? lsen / B : B / lsen;
  // The residual is increasing in tau on the bracket.
  double lo = opts.lo;
  double hi = opts.hi;
  if (tau_residual(lo, dd, beta) >= sol.target) {
    sol.tau = lo;
    sol.clamped = true;
    return sol;
  }
  if (tau_residual(hi, dd, beta) <= sol.target) {
    sol.tau = hi;
    sol.clamped = true;
    return sol;
  }
  for (int i = 0; i < opts.iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tau_residual(mid, dd, beta) < sol.target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  sol.tau = 0.5 * (lo + hi);
  return sol;
}

double sparse_net_size(const FeasibleSet& X, double tau, std::size_t d,
                       const NetOptions& opts) {
  check_net_inputs(X, tau, d);
  if (tau >= sup_l2(X)) return 1.0;
  const std::size_t k = default_support(tau, d, opts.support_size);
  const double h = tau / std::sqrt(static_cast<double>(k));
  if (const auto* b = std::get_if<Box>(&X)) {
    // Elementary symmetric polynomial of the per-coordinate level counts.
    const auto levels = box_levels(*b, h);
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (const auto& l : levels) {
      const double c = static_cast<double>(l.size());
      for (std::size_t j = k; j >= 1; --j) e[j] += e[j - 1] * c;
    }
    double total = 0.0;
    for (double v : e) total += v;
    return total;
  }
  const BallGrid g = make_ball_grid(X, h);
  const auto patterns = count_ball_patterns(g, k);
  double total = 0.0;
  for (std::size_t j = 0; j <= k; ++j) total += binomial(d, j) * patterns[j];
  return total;
}

SparseNet build_sparse_net(const FeasibleSet& X, double tau, std::size_t d,
                           const NetOptions& opts) {
  const double size = sparse_net_size(X, tau, d, opts);
  if (size > static_cast<double>(opts.cap)) {
    std::ostringstream os;
    os << "build_sparse_net: net has " << size << " points, cap is "
       << opts.cap;
    throw CapacityError(os.str(), size);
  }
  SparseNet net;
  const auto D = static_cast<Eigen::Index>(d);
  if (tau >= sup_l2(X)) {
    net.support_size = 0;
    net.spacing = tau;
    net.points.push_back({{}, {}, Vector::Zero(D)});
    net.within_size_bound = true;
    return net;
  }
  const std::size_t k = default_support(tau, d, opts.support_size);
  const double h = tau / std::sqrt(static_cast<double>(k));
  net.support_size = k;
  net.spacing = h;
  net.points.reserve(static_cast<std::size_t>(size));

  auto emit = [&](const std::vector<std::size_t>& supp,
                  const std::vector<long long>& levels) {
    NetPoint p;
    p.support = supp;
    p.point = Vector::Zero(D);
    for (std::size_t i = 0; i < supp.size(); ++i) {
      const double v = h * static_cast<double>(levels[i]);
      p.values.push_back(v);
      p.point[static_cast<Eigen::Index>(supp[i])] = v;
    }
    if (!contains(X, p.point, 1e-9)) {
      throw InternalConsistencyError("build_sparse_net: grid point left X");
    }
    net.points.push_back(std::move(p));
  };

  if (const auto* b = std::get_if<Box>(&X)) {
    const auto levels = box_levels(*b, h);
    for (std::size_t j = 0; j <= k; ++j) {
      std::vector<std::size_t> supp(j);
      for (std::size_t i = 0; i < j; ++i) supp[i] = i;
      do {
        std::vector<long long> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == j) {
            emit(supp, cur);
            return;
          }
          for (long long a : levels[supp[i]]) {
            cur.push_back(a);
            rec(i + 1);
            cur.pop_back();
          }
        };
        rec(0);
      } while (j > 0 && next_combination(supp, d));
    }
  } else {
    const BallGrid g = make_ball_grid(X, h);
    for (std::size_t j = 0; j <= k; ++j) {
      std::vector<std::vector<long long>> patterns;
      std::vector<long long> cur;
      enumerate_ball_patterns(g, j, cur, 0, patterns);
      if (patterns.empty()) continue;
      std::vector<std::size_t> supp(j);
      for (std::size_t i = 0; i < j; ++i) supp[i] = i;
      do {
        for (const auto& pat : patterns) emit(supp, pat);
      } while (j > 0 && next_combination(supp, d));
    }
  }
  if (static_cast<double>(net.points.size()) != size) {
    throw InternalConsistencyError("build_sparse_net: count mismatch");
  }
  const double log_bound = log_binomial(d, k) +
                           static_cast<double>(k) * std::log(3.0 / tau);
  net.within_size_bound =
      std::log(static_cast<double>(net.points.size())) <= log_bound + 1e-9;
  return net;
}

std::vector<double> normalized_exp_weights(
    const std::vector<double>& log_weights) {
  SPARSEDP_REQUIRE(!log_weights.empty(), "normalized_exp_weights: empty input");
  const double m = *std::max_element(log_weights.begin(), log_weights.end());
  SPARSEDP_REQUIRE(std::isfinite(m),
                   "normalized_exp_weights: the largest log weight must be finite");
  std::vector<double> p(log_weights.size());
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(log_weights[i] - m);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

ExpMechanismResult sparse_exp_mechanism(const Dataset& S, double eps,
                                        double beta, const LossModel& loss,
                                        const FeasibleSet& X, RngStream& rng,
                                        const ExpMechanismOptions& opts) {
  SPARSEDP_REQUIRE(eps > 0, "sparse_exp_mechanism: eps must be positive");
  SPARSEDP_REQUIRE(S.size() >= 1, "sparse_exp_mechanism: empty dataset");
  SPARSEDP_REQUIRE(loss.convex(),
                   "sparse_exp_mechanism: requires a convex loss");
  const auto& c = loss.constants();
  SPARSEDP_REQUIRE(c.B.has_value() && *c.B > 0,
                   "sparse_exp_mechanism: requires a declared range B");
  const double B = *c.B;
  const std::size_t d = S.bounds.d;
  const double n = static_cast<double>(S.size());

  ExpMechanismResult r;
  if (opts.tau) {
    r.tau = *opts.tau;
  } else {
    r.tau = solve_tau(c.L, std::max<std::size_t>(c.s, 1), d, B, eps, S.size(),
                      beta, opts.tau_options)
                .tau;
  }
  NetOptions no;
  no.cap = opts.cap;
  no.support_size = opts.support_size;
  r.net = build_sparse_net(X, r.tau, d, no);
  r.support_size = r.net.support_size;

  const double scale = opts.literal_weight ? B / (eps * n) : eps * n / (2.0 * B);
  std::vector<double> logw(r.net.points.size());
  r.objective.resize(r.net.points.size());
  for (std::size_t i = 0; i < logw.size(); ++i) {
    r.objective[i] = empirical_risk(loss, S, r.net.points[i].point);
    logw[i] = -scale * r.objective[i];
  }
  r.probabilities = normalized_exp_weights(logw);

  const double u = rng.Uniform();
  double acc = 0.0;
  // Rounding can leave u >= acc at the end; fall back to the last point
  // with positive mass.
  r.index = r.probabilities.size() - 1;
  while (r.index > 0 && r.probabilities[r.index] == 0.0) --r.index;
  for (std::size_t i = 0; i < r.probabilities.size(); ++i) {
    acc += r.probabilities[i];
    if (u < acc) {
      r.index = i;
      break;
    }
  }
  r.x = r.net.points[r.index].point;
  return r;
}

}  // namespace sparsedp
