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

#ifndef SPARSEDP_LOSS_H_
#define SPARSEDP_LOSS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparsedp/dataset.h"
#include "sparsedp/sparse_vector.h"

namespace sparsedp {

// Problem constants. L is always required; the rest are needed only by the
// routines that consume them and are checked there.
struct LossConstants {
  double L = 0.0;                // per-example gradient l2 bound
  std::optional<double> H;       // smoothness
  std::optional<double> B;       // range of f over the feasible set
  std::optional<double> Gamma;   // F(x0) - inf F
  std::optional<double> D;       // distance bound ||x0 - x*||
  std::size_t s = 0;             // per-example gradient sparsity
  std::size_t d = 0;
};

// Per-example loss f(x, z) whose gradient in x is supported on supp(z).
// The label argument is ignored by losses that do not use one.
class LossModel {
 public:
  explicit LossModel(LossConstants c) : constants_(std::move(c)) {}
  virtual ~LossModel() = default;

  virtual std::string name() const = 0;
  virtual bool convex() const = 0;
  virtual double Value(const Vector& x, const SparseVector& z,
                       double label) const = 0;
  virtual SparseVector Gradient(const Vector& x, const SparseVector& z,
                                double label) const = 0;

  const LossConstants& constants() const { return constants_; }
  LossConstants& mutable_constants() { return constants_; }

 private:
  LossConstants constants_;
};

// f(x, z) = <x, z>.
class LinearLoss : public LossModel {
 public:
  using LossModel::LossModel;
  std::string name() const override { return "linear"; }
  bool convex() const override { return true; }
  double Value(const Vector& x, const SparseVector& z, double) const override;
  SparseVector Gradient(const Vector& x, const SparseVector& z,
                        double) const override;
};

// f(x, z) = 0.5 (<x, z> - y)^2.
class SquaredLoss : public LossModel {
 public:
  using LossModel::LossModel;
  std::string name() const override { return "sparse-least-squares"; }
  bool convex() const override { return true; }
  double Value(const Vector& x, const SparseVector& z,
               double y) const override;
  SparseVector Gradient(const Vector& x, const SparseVector& z,
                        double y) const override;
};

// f(x, z) = 0.5 sum_{j in supp z} (x_j - z_j)^2: an embedding row pulled
// toward the observed coordinates only.
class EmbeddingLoss : public LossModel {
 public:
  using LossModel::LossModel;
  std::string name() const override { return "embedding-toy"; }
  bool convex() const override { return true; }
  double Value(const Vector& x, const SparseVector& z, double) const override;
  SparseVector Gradient(const Vector& x, const SparseVector& z,
                        double) const override;
};

// f(x, z) = sigmoid(-y <x, z>), the smoothed 0-1 loss. Nonconvex, bounded in
// (0, 1), with |sigmoid'| <= 1/4 and |sigmoid''| <= 1/(6 sqrt 3).
class SigmoidLoss : public LossModel {
 public:
  using LossModel::LossModel;
  std::string name() const override { return "nonconvex-smooth"; }
  bool convex() const override { return false; }
  double Value(const Vector& x, const SparseVector& z,
               double y) const override;
  SparseVector Gradient(const Vector& x, const SparseVector& z,
                        double y) const override;

  static constexpr double kMaxFirstDerivative = 0.25;
  // max |sigmoid''(u)| = 1/(6 sqrt 3), attained at u = ln(2 -+ sqrt 3).
  static constexpr double kMaxSecondDerivative = 0.09622504486493762;
};

// F_S(x) = (1/n) sum_i f(x, z_i).
double empirical_risk(const LossModel& f, const Dataset& S, const Vector& x);
// grad F_S(x), dense.
Vector empirical_gradient(const LossModel& f, const Dataset& S,
                          const Vector& x);
// Mean of per-example gradients over idx, dense.
Vector batch_gradient(const LossModel& f, const Dataset& S, const Vector& x,
                      const std::vector<std::size_t>& idx);

}  // namespace sparsedp

#endif  // SPARSEDP_LOSS_H_
