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

#include "sparsedp/harness/problems.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sparsedp/erm_solver.h"
#include "sparsedp/error.h"

namespace sparsedp::harness {

namespace {

Vector random_direction(std::size_t d, RngStream& rng) {
  Vector v(static_cast<Eigen::Index>(d));
  for (auto& x : v) x = rng.StandardNormal();
  return v / v.norm();
}

Dataset sign_dataset(std::size_t d, std::size_t s, std::size_t n,
                     double popularity, RngStream& rng) {
  Dataset S;
  S.bounds = {d, s, 1.0};
  S.points.reserve(n);
  const double v = 1.0 / std::sqrt(static_cast<double>(s));
  for (std::size_t i = 0; i < n; ++i) {
    if (popularity == 0.0) {
      S.points.push_back(random_sparse_sign_vector(d, s, rng));
      continue;
    }
    std::vector<std::pair<std::size_t, double>> e;
    for (std::size_t j : popular_support(d, s, popularity, rng)) {
      e.emplace_back(j, rng.Bernoulli(0.5) ? v : -v);
    }
    S.points.emplace_back(d, std::move(e));
  }
  return S;
}

}  // namespace

ProblemKind ParseProblemKind(const std::string& s) {
  if (s == "linear") return ProblemKind::kLinear;
  if (s == "sparse-least-squares" || s == "sls") {
    return ProblemKind::kSparseLeastSquares;
  }
  if (s == "embedding-toy") return ProblemKind::kEmbeddingToy;
  if (s == "nonconvex-smooth") return ProblemKind::kNonconvexSmooth;
  throw InvalidArgument("unknown problem kind '" + s + "'");
}

std::string ToString(ProblemKind k) {
  switch (k) {
    case ProblemKind::kLinear:
      return "linear";
    case ProblemKind::kSparseLeastSquares:
      return "sparse-least-squares";
    case ProblemKind::kEmbeddingToy:
      return "embedding-toy";
    case ProblemKind::kNonconvexSmooth:
      return "nonconvex-smooth";
  }
  return "unknown";
}

SparseVector random_sparse_sign_vector(std::size_t d, std::size_t s,
                                       RngStream& rng) {
  SPARSEDP_REQUIRE(s >= 1 && s <= d, "random_sparse_sign_vector: need 1 <= s <= d");
  const double v = 1.0 / std::sqrt(static_cast<double>(s));
  std::vector<std::pair<std::size_t, double>> e;
  e.reserve(s);
  for (std::size_t j : rng.SampleWithoutReplacement(d, s)) {
    e.emplace_back(j, rng.Bernoulli(0.5) ? v : -v);
  }
  return SparseVector(d, std::move(e));
}

std::vector<std::size_t> popular_support(std::size_t d, std::size_t s,
                                         double exponent, RngStream& rng) {
  SPARSEDP_REQUIRE(s >= 1 && s <= d, "popular_support: need 1 <= s <= d");
  std::vector<double> w(d);
  for (std::size_t j = 0; j < d; ++j) {
    w[j] = std::pow(static_cast<double>(j + 1), -exponent);
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < s; ++k) {
    double total = 0.0;
    for (double x : w) total += x;
    double u = rng.Uniform() * total;
    std::size_t pick = d;
    for (std::size_t j = 0; j < d; ++j) {
      if (w[j] == 0.0) continue;
      pick = j;
      if (u < w[j]) break;
      u -= w[j];
    }
    out.push_back(pick);
    w[pick] = 0.0;
  }
  return out;
}

// Declared constants, with R the ball radius and p the planted norm:
//   linear:        L = 1,     H = 0, B = 2R,            D = R
//   least squares: L = R + p, H = 1, B = (R + p)^2 / 2, D = R
//   embedding:     L = R + 1, H = 1, B = (R + 1)^2 / 2, D = R
//   nonconvex:     L = 1/4,   H = max|sigmoid''|, B = 1, Gamma = F(0)
// Every point has unit norm, and |<x, z>| <= R on the ball.
Problem make_problem(ProblemKind kind, std::size_t d, std::size_t s,
                     std::size_t n, RngStream& rng, const ProblemOptions& opts) {
  SPARSEDP_REQUIRE(n >= 1, "make_problem: n must be positive");
  SPARSEDP_REQUIRE(opts.radius > 0, "make_problem: radius must be positive");
  Problem p;
  p.kind = kind;
  RngStream data_rng = rng.Substream(0);
  RngStream aux_rng = rng.Substream(1);
  const double popularity = opts.popularity.value_or(
      kind == ProblemKind::kSparseLeastSquares ? 1.0 : 0.0);
  SPARSEDP_REQUIRE(popularity >= 0, "make_problem: popularity must be >= 0");
  p.S = sign_dataset(d, s, n, popularity, data_rng);
  p.x0 = Vector::Zero(static_cast<Eigen::Index>(d));
  const double R = opts.radius;
  LossConstants c;
  c.s = s;
  c.d = d;

  switch (kind) {
    case ProblemKind::kLinear: {
      p.X = L2Ball{R};
      c.L = 1.0;
      c.H = 0.0;
      c.B = 2.0 * R;
      c.D = R;
      const Vector zbar = dataset_mean(p.S);
      const double norm = zbar.norm();
      p.x_star = norm > 0 ? Vector(-R * zbar / norm) : Vector(p.x0);
      p.f_star = -R * norm;
      c.Gamma = -p.f_star;
      p.loss = std::make_unique<LinearLoss>(c);
      break;
    }
    case ProblemKind::kSparseLeastSquares: {
      SPARSEDP_REQUIRE(opts.planted_norm >= 0 && opts.planted_norm <= R,
                       "make_problem: planted norm must lie in [0, radius]");
      p.X = L2Ball{R};
      const std::size_t k = std::min(d, opts.planted_support.value_or(s));
      Vector planted = Vector::Zero(static_cast<Eigen::Index>(d));
      if (k == 0) {
        planted = random_direction(d, aux_rng);
      } else {
        planted.head(static_cast<Eigen::Index>(k)) = random_direction(k, aux_rng);
      }
      planted *= opts.planted_norm;
      p.S.labels.reserve(n);
      for (const auto& z : p.S.points) p.S.labels.push_back(z.Dot(planted));
      c.L = R + opts.planted_norm;
      c.H = 1.0;
      c.B = 0.5 * c.L * c.L;
      c.D = R;
      p.loss = std::make_unique<SquaredLoss>(c);
      // Noiseless labels: the planted vector attains F = 0.
      p.planted = planted;
      p.x_star = planted;
      p.f_star = empirical_risk(*p.loss, p.S, planted);
      p.certificate = empirical_gradient(*p.loss, p.S, planted).norm();
      p.loss->mutable_constants().Gamma =
          empirical_risk(*p.loss, p.S, p.x0) - p.f_star;
      break;
    }
    case ProblemKind::kEmbeddingToy: {
      p.X = L2Ball{R};
      c.L = R + 1.0;
      c.H = 1.0;
      c.B = 0.5 * c.L * c.L;
      c.D = R;
      p.loss = std::make_unique<EmbeddingLoss>(c);
      if (opts.solve) {
        ErmSolverOptions so;
        so.tol = opts.solver_tol;
        const ErmSolution sol = solve_erm(*p.loss, p.S, p.X, 0.0, so);
        p.x_star = sol.x;
        p.f_star = sol.objective;
        p.certificate = sol.residual;
        p.loss->mutable_constants().Gamma =
            empirical_risk(*p.loss, p.S, p.x0) - p.f_star;
      }
      break;
    }
    case ProblemKind::kNonconvexSmooth: {
      p.X = Unconstrained{};
      const Vector planted = random_direction(d, aux_rng);
      p.S.labels.reserve(n);
      for (const auto& z : p.S.points) {
        double y = z.Dot(planted) >= 0 ? 1.0 : -1.0;
        if (aux_rng.Bernoulli(opts.label_flip)) y = -y;
        p.S.labels.push_back(y);
      }
      p.planted = planted;
      c.L = SigmoidLoss::kMaxFirstDerivative;
      c.H = SigmoidLoss::kMaxSecondDerivative;
      c.B = 1.0;
      p.loss = std::make_unique<SigmoidLoss>(c);
      // inf F >= 0, so F(x0) bounds the initial gap.
      p.loss->mutable_constants().Gamma = empirical_risk(*p.loss, p.S, p.x0);
      break;
    }
  }
  return p;
}

ConstantCheck check_declared_constants(const Problem& p, RngStream& rng,
                                       std::size_t samples) {
  const auto& c = p.loss->constants();
  const std::size_t d = p.S.bounds.d;
  const double radius = is_bounded(p.X) ? l2_diameter(p.X) / 2.0 : 2.0;
  ConstantCheck out;
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -std::numeric_limits<double>::infinity();
  const double h = 1e-4;
  for (std::size_t k = 0; k < samples; ++k) {
    // Half the samples on the boundary, where gradients tend to peak.
    const double r = (k % 2 == 0) ? radius : radius * rng.Uniform();
    const Vector x = r * random_direction(d, rng);
    const std::size_t i = static_cast<std::size_t>(rng.UniformInt(p.S.size()));
    const auto& z = p.S.points[i];
    const double y = p.S.label(i);
    out.max_grad_norm =
        std::max(out.max_grad_norm, p.loss->Gradient(x, z, y).norms().l2);
    const double f = p.loss->Value(x, z, y);
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
    const Vector v = random_direction(d, rng);
    const double curv =
        (p.loss->Value(x + h * v, z, y) - 2 * f + p.loss->Value(x - h * v, z, y)) /
        (h * h);
    out.max_curvature = std::max(out.max_curvature, std::abs(curv));
  }
  out.max_range = fmax - fmin;
  const auto within = [](double observed, double declared) {
    return observed <= 1.01 * declared + 1e-6;
  };
  out.consistent = within(out.max_grad_norm, c.L) &&
                   (!c.H || within(out.max_curvature, *c.H)) &&
                   (!c.B || within(out.max_range, *c.B));
  return out;
}

}  // namespace sparsedp::harness
