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

#ifndef SPARSEDP_ERROR_H_
#define SPARSEDP_ERROR_H_

#include <stdexcept>
#include <string>

namespace sparsedp {

// Bad argument or violated precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

// An iterative solver ran out of iterations. The residuals at exit are kept
// so callers can decide whether the partial answer is usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double primal_residual,
                   double dual_residual = 0.0)
      : std::runtime_error(what),
        primal_residual_(primal_residual),
        dual_residual_(dual_residual) {}

  double primal_residual() const { return primal_residual_; }
  double dual_residual() const { return dual_residual_; }

 private:
  double primal_residual_;
  double dual_residual_;
};

// A guarantee that must hold on every run did not. Always a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  explicit InternalConsistencyError(const std::string& what)
      : std::logic_error(what) {}
};

// A requested object (a net, an enumeration) is larger than the caller's cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, double required)
      : std::runtime_error(what), required_(required) {}
  double required() const { return required_; }

 private:
  double required_;
};

#define SPARSEDP_REQUIRE(cond, msg)                          \
  do {                                                       \
    if (!(cond)) throw ::sparsedp::InvalidArgument(msg);     \
  } while (0)

}  // namespace sparsedp

#endif  // SPARSEDP_ERROR_H_
