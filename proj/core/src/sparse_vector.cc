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

#include "sparsedp/sparse_vector.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsedp/error.h"

namespace sparsedp {

Norms norms(const Vector& v) {
  Norms n;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v[j]);
    if (a != 0.0) ++n.l0;
    n.l1 += a;
    n.linf = std::max(n.linf, a);
  }
  n.l2 = v.norm();
  return n;
}

SparseVector::SparseVector(std::size_t dim,
                           std::vector<std::pair<std::size_t, double>> entries)
    : dim_(dim) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  indices_.reserve(entries.size());
  values_.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto [idx, val] = entries[k];
    if (idx >= dim) {
      throw InvalidArgument("SparseVector: index " + std::to_string(idx) +
                            " out of range for dim " + std::to_string(dim));
    }
    if (k > 0 && entries[k - 1].first == idx) {
      throw InvalidArgument("SparseVector: duplicate index " +
                            std::to_string(idx));
    }
    if (!std::isfinite(val)) {
      throw InvalidArgument("SparseVector: non-finite value");
    }
    if (val == 0.0) continue;
    indices_.push_back(idx);
    values_.push_back(val);
  }
  ComputeNorms();
}

SparseVector SparseVector::FromDense(const Vector& v) {
  SparseVector out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j])) {
      throw InvalidArgument("SparseVector::FromDense: non-finite value");
    }
    if (v[j] != 0.0) {
      out.indices_.push_back(static_cast<std::size_t>(j));
      out.values_.push_back(v[j]);
    }
  }
  out.ComputeNorms();
  return out;
}

void SparseVector::ComputeNorms() {
  norms_ = Norms{};
  norms_.l0 = values_.size();
  double sq = 0.0;
  for (double v : values_) {
    const double a = std::abs(v);
    norms_.l1 += a;
    norms_.linf = std::max(norms_.linf, a);
    sq += v * v;
  }
  norms_.l2 = std::sqrt(sq);
}

Vector SparseVector::ToDense() const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
  AddTo(out);
  return out;
}

double SparseVector::Dot(const Vector& x) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    acc += values_[k] * x[static_cast<Eigen::Index>(indices_[k])];
  }
  return acc;
}

void SparseVector::AddTo(Vector& y, double alpha) const {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    y[static_cast<Eigen::Index>(indices_[k])] += alpha * values_[k];
  }
}

SparseVector SparseVector::Scaled(double alpha) const {
  if (alpha == 0.0) return SparseVector(dim_);
  SparseVector out = *this;
  for (double& v : out.values_) v *= alpha;
  // Products of nonzero finite doubles can underflow to zero.
  std::vector<std::pair<std::size_t, double>> e;
  bool underflow = false;
  for (double v : out.values_) underflow |= (v == 0.0);
  if (underflow) {
    for (std::size_t k = 0; k < out.indices_.size(); ++k) {
      e.emplace_back(out.indices_[k], out.values_[k]);
    }
    return SparseVector(dim_, std::move(e));
  }
  out.ComputeNorms();
  return out;
}

}  // namespace sparsedp
