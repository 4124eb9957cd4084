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

#include "sparsedp/loss.h"

#include <cmath>

#include "sparsedp/error.h"

namespace sparsedp {
namespace {

double Sigmoid(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

double LinearLoss::Value(const Vector& x, const SparseVector& z,
                         double) const {
  return z.Dot(x);
}

SparseVector LinearLoss::Gradient(const Vector&, const SparseVector& z,
                                  double) const {
  return z;
}

double SquaredLoss::Value(const Vector& x, const SparseVector& z,
                          double y) const {
  const double r = z.Dot(x) - y;
  return 0.5 * r * r;
}

SparseVector SquaredLoss::Gradient(const Vector& x, const SparseVector& z,
                                   double y) const {
  return z.Scaled(z.Dot(x) - y);
}

double EmbeddingLoss::Value(const Vector& x, const SparseVector& z,
                            double) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < z.nnz(); ++k) {
    const double r = x[static_cast<Eigen::Index>(z.indices()[k])] -
                     z.values()[k];
    acc += r * r;
  }
  return 0.5 * acc;
}

SparseVector EmbeddingLoss::Gradient(const Vector& x, const SparseVector& z,
                                     double) const {
  std::vector<std::pair<std::size_t, double>> e;
  e.reserve(z.nnz());
  for (std::size_t k = 0; k < z.nnz(); ++k) {
    const auto j = z.indices()[k];
    e.emplace_back(j, x[static_cast<Eigen::Index>(j)] - z.values()[k]);
  }
  return SparseVector(z.dim(), std::move(e));
}

double SigmoidLoss::Value(const Vector& x, const SparseVector& z,
                          double y) const {
  return Sigmoid(-y * z.Dot(x));
}

SparseVector SigmoidLoss::Gradient(const Vector& x, const SparseVector& z,
                                   double y) const {
  const double p = Sigmoid(-y * z.Dot(x));
  return z.Scaled(-y * p * (1.0 - p));
}

double empirical_risk(const LossModel& f, const Dataset& S, const Vector& x) {
  SPARSEDP_REQUIRE(S.size() > 0, "empirical_risk: empty dataset");
  double acc = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    acc += f.Value(x, S.points[i], S.label(i));
  }
  return acc / static_cast<double>(S.size());
}

Vector empirical_gradient(const LossModel& f, const Dataset& S,
                          const Vector& x) {
  SPARSEDP_REQUIRE(S.size() > 0, "empirical_gradient: empty dataset");
  Vector g = Vector::Zero(x.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    f.Gradient(x, S.points[i], S.label(i)).AddTo(g);
  }
  return g / static_cast<double>(S.size());
}

Vector batch_gradient(const LossModel& f, const Dataset& S, const Vector& x,
                      const std::vector<std::size_t>& idx) {
  SPARSEDP_REQUIRE(!idx.empty(), "batch_gradient: empty batch");
  Vector g = Vector::Zero(x.size());
  for (std::size_t i : idx) {
    f.Gradient(x, S.points.at(i), S.label(i)).AddTo(g);
  }
  return g / static_cast<double>(idx.size());
}

}  // namespace sparsedp
