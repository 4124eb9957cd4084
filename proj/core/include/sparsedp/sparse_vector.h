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

#ifndef SPARSEDP_SPARSE_VECTOR_H_
#define SPARSEDP_SPARSE_VECTOR_H_

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sparsedp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Norms {
  std::size_t l0 = 0;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

Norms norms(const Vector& v);

// Immutable sparse vector in R^dim. Indices are strictly increasing and no
// stored value is zero. Norms are computed once at construction.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}

  // Entries may be unsorted and may contain zeros (dropped). Duplicate
  // indices, out-of-range indices and non-finite values are rejected.
  SparseVector(std::size_t dim,
               std::vector<std::pair<std::size_t, double>> entries);

  // Keeps the nonzero coordinates of a dense vector.
  static SparseVector FromDense(const Vector& v);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return indices_.size(); }
  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }
  const Norms& norms() const { return norms_; }

  Vector ToDense() const;
  double Dot(const Vector& x) const;
  // y += alpha * this.
  void AddTo(Vector& y, double alpha = 1.0) const;
  SparseVector Scaled(double alpha) const;

 private:
  void ComputeNorms();

  std::size_t dim_ = 0;
  std::vector<std::size_t> indices_;
  std::vector<double> values_;
  Norms norms_;
};

}  // namespace sparsedp

#endif  // SPARSEDP_SPARSE_VECTOR_H_
