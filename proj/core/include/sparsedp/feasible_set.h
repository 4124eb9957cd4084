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

#ifndef SPARSEDP_FEASIBLE_SET_H_
#define SPARSEDP_FEASIBLE_SET_H_

#include <string>
#include <variant>

#include "sparsedp/sparse_vector.h"

namespace sparsedp {

struct Unconstrained {};

struct L2Ball {
  double radius = 1.0;
};

struct L1Ball {
  double radius = 1.0;
};

// Per-coordinate bounds lo <= hi.
struct Box {
  Vector lo;
  Vector hi;
};

// All variants are closed under restriction to a coordinate subset when they
// contain the origin, which is what the sparse net construction relies on.
using FeasibleSet = std::variant<Unconstrained, L2Ball, Box, L1Ball>;

// Throws InvalidArgument on a nonpositive radius or lo > hi.
void validate_feasible_set(const FeasibleSet& X);

bool is_unconstrained(const FeasibleSet& X);
bool is_bounded(const FeasibleSet& X);
bool contains(const FeasibleSet& X, const Vector& x, double tol = 1e-12);

// Euclidean projection. This is the projection used by the SGD step.
Vector project_euclidean(const FeasibleSet& X, const Vector& v);

// l2 diameter of X; infinite for Unconstrained.
double l2_diameter(const FeasibleSet& X);

std::string describe(const FeasibleSet& X);

struct PrivacyParams {
  double eps = 1.0;
  double delta = 0.0;

  bool pure() const { return delta == 0.0; }
};

// eps > 0 and delta in [0, 1).
void validate_privacy(const PrivacyParams& pp);

}  // namespace sparsedp

#endif  // SPARSEDP_FEASIBLE_SET_H_
