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

#include "sparsedp/dataset.h"

#include <cmath>

#include "sparsedp/error.h"

namespace sparsedp {

Vector dataset_mean(const Dataset& S) {
  SPARSEDP_REQUIRE(!S.points.empty(), "dataset_mean: empty dataset");
  Vector acc = Vector::Zero(static_cast<Eigen::Index>(S.bounds.d));
  for (const auto& z : S.points) {
    SPARSEDP_REQUIRE(z.dim() == S.bounds.d, "dataset_mean: dimension mismatch");
    z.AddTo(acc);
  }
  return acc / static_cast<double>(S.points.size());
}

Vector subset_mean(const Dataset& S, const std::vector<std::size_t>& idx) {
  SPARSEDP_REQUIRE(!idx.empty(), "subset_mean: empty index set");
  Vector acc = Vector::Zero(static_cast<Eigen::Index>(S.bounds.d));
  for (std::size_t i : idx) S.points.at(i).AddTo(acc);
  return acc / static_cast<double>(idx.size());
}

std::string ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDimension:
      return "dimension";
    case ViolationKind::kSparsity:
      return "sparsity";
    case ViolationKind::kNorm:
      return "l2-norm";
    case ViolationKind::kL1Norm:
      return "l1-norm";
    case ViolationKind::kLabels:
      return "labels";
  }
  return "unknown";
}

std::vector<Violation> validate_dataset(const Dataset& S,
                                        const ValidationOptions& opts) {
  std::vector<Violation> out;
  const auto& b = S.bounds;
  if (S.has_labels() && S.labels.size() != S.points.size()) {
    out.push_back({0, ViolationKind::kLabels,
                   static_cast<double>(S.labels.size()),
                   static_cast<double>(S.points.size())});
  }
  const double l1_radius = b.L * std::sqrt(static_cast<double>(b.s));
  for (std::size_t i = 0; i < S.points.size(); ++i) {
    const auto& z = S.points[i];
    if (z.dim() != b.d) {
      out.push_back({i, ViolationKind::kDimension,
                     static_cast<double>(z.dim()), static_cast<double>(b.d)});
      continue;
    }
    const auto& nz = z.norms();
    if (opts.l1_mode) {
      if (nz.l1 > l1_radius * (1.0 + opts.tol)) {
        out.push_back({i, ViolationKind::kL1Norm, nz.l1, l1_radius});
      }
      continue;
    }
    if (nz.l0 > b.s) {
      out.push_back({i, ViolationKind::kSparsity, static_cast<double>(nz.l0),
                     static_cast<double>(b.s)});
    }
    if (nz.l2 > b.L * (1.0 + opts.tol)) {
      out.push_back({i, ViolationKind::kNorm, nz.l2, b.L});
    }
  }
  return out;
}

}  // namespace sparsedp
