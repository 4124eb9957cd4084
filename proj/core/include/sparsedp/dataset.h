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

#ifndef SPARSEDP_DATASET_H_
#define SPARSEDP_DATASET_H_

#include <cstddef>
#include <string>
#include <vector>

#include "sparsedp/sparse_vector.h"

namespace sparsedp {

struct DatasetBounds {
  std::size_t d = 0;
  std::size_t s = 0;  // maximum number of nonzeros per point
  double L = 0.0;     // maximum l2 norm per point
};

// Ordered sequence of sparse points with declared bounds. Labels are optional;
// when present there is one per point.
struct Dataset {
  std::vector<SparseVector> points;
  std::vector<double> labels;
  DatasetBounds bounds;

  std::size_t size() const { return points.size(); }
  bool has_labels() const { return !labels.empty(); }
  double label(std::size_t i) const { return labels.empty() ? 0.0 : labels[i]; }
};

Vector dataset_mean(const Dataset& S);
// Mean over a subset of point indices.
Vector subset_mean(const Dataset& S, const std::vector<std::size_t>& idx);

enum class ViolationKind { kDimension, kSparsity, kNorm, kL1Norm, kLabels };

struct Violation {
  std::size_t point = 0;
  ViolationKind kind = ViolationKind::kDimension;
  double value = 0.0;
  double bound = 0.0;
};

std::string ToString(ViolationKind kind);

struct ValidationOptions {
  double tol = 1e-9;  // relative
  // Validate against the l1 ball of radius L*sqrt(s) instead of the set of
  // s-sparse vectors with l2 norm at most L.
  bool l1_mode = false;
};

std::vector<Violation> validate_dataset(const Dataset& S,
                                        const ValidationOptions& opts = {});
inline std::vector<Violation> validate_dataset(const Dataset& S, double tol) {
  return validate_dataset(S, ValidationOptions{tol, false});
}

}  // namespace sparsedp

#endif  // SPARSEDP_DATASET_H_
