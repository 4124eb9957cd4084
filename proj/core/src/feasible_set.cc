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

#include "sparsedp/feasible_set.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "sparsedp/error.h"
#include "sparsedp/geometry.h"
#include "overloaded.h"

namespace sparsedp {

using internal::Overloaded;

void validate_feasible_set(const FeasibleSet& X) {
  std::visit(
      Overloaded{
          [](const Unconstrained&) {},
          [](const L2Ball& b) {
            SPARSEDP_REQUIRE(b.radius > 0 && std::isfinite(b.radius),
                             "L2Ball: radius must be positive and finite");
          },
          [](const L1Ball& b) {
            SPARSEDP_REQUIRE(b.radius > 0 && std::isfinite(b.radius),
                             "L1Ball: radius must be positive and finite");
          },
          [](const Box& b) {
            SPARSEDP_REQUIRE(b.lo.size() == b.hi.size(),
                             "Box: lo and hi differ in size");
            SPARSEDP_REQUIRE((b.lo.array() <= b.hi.array()).all(),
                             "Box: lo > hi in some coordinate");
          },
      },
      X);
}

bool is_unconstrained(const FeasibleSet& X) {
  return std::holds_alternative<Unconstrained>(X);
}

bool is_bounded(const FeasibleSet& X) {
  if (is_unconstrained(X)) return false;
  if (const auto* b = std::get_if<Box>(&X)) {
    return b->lo.allFinite() && b->hi.allFinite();
  }
  return true;
}

bool contains(const FeasibleSet& X, const Vector& x, double tol) {
  return std::visit(
      Overloaded{
          [](const Unconstrained&) { return true; },
          [&](const L2Ball& b) { return x.norm() <= b.radius * (1 + tol); },
          [&](const L1Ball& b) {
            return x.lpNorm<1>() <= b.radius * (1 + tol);
          },
          [&](const Box& b) {
            return x.size() == b.lo.size() &&
                   (x.array() >= b.lo.array() - tol).all() &&
                   (x.array() <= b.hi.array() + tol).all();
          },
      },
      X);
}

Vector project_euclidean(const FeasibleSet& X, const Vector& v) {
  return std::visit(
      Overloaded{
          [&](const Unconstrained&) -> Vector { return v; },
          [&](const L2Ball& b) -> Vector {
            return project_l2_ball(v, b.radius).point;
          },
          [&](const L1Ball& b) -> Vector {
            return project_l1_ball(v, b.radius).point;
          },
          [&](const Box& b) -> Vector {
            SPARSEDP_REQUIRE(v.size() == b.lo.size(),
                             "project_euclidean: dimension mismatch");
            return v.cwiseMax(b.lo).cwiseMin(b.hi);
          },
      },
      X);
}

double l2_diameter(const FeasibleSet& X) {
  return std::visit(
      Overloaded{
          [](const Unconstrained&) {
            return std::numeric_limits<double>::infinity();
          },
          [](const L2Ball& b) { return 2 * b.radius; },
          [](const L1Ball& b) { return 2 * b.radius; },
          [](const Box& b) { return (b.hi - b.lo).norm(); },
      },
      X);
}

std::string describe(const FeasibleSet& X) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Unconstrained&) { os << "unconstrained"; },
                 [&](const L2Ball& b) { os << "l2ball(" << b.radius << ")"; },
                 [&](const L1Ball& b) { os << "l1ball(" << b.radius << ")"; },
                 [&](const Box& b) { os << "box(d=" << b.lo.size() << ")"; },
             },
             X);
  return os.str();
}

void validate_privacy(const PrivacyParams& pp) {
  SPARSEDP_REQUIRE(pp.eps > 0 && std::isfinite(pp.eps),
                   "privacy: eps must be positive and finite");
  SPARSEDP_REQUIRE(pp.delta >= 0 && pp.delta < 1,
                   "privacy: delta must lie in [0, 1)");
}

}  // namespace sparsedp
