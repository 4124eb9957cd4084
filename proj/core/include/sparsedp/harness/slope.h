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

#ifndef SPARSEDP_HARNESS_SLOPE_H_
#define SPARSEDP_HARNESS_SLOPE_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sparsedp::harness {

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;  // of log y against log x
  std::vector<double> x;        // distinct x values, increasing
  std::vector<double> medians;  // median y at each x
};

// Groups y by x, takes medians, and fits log(median) = a + slope log(x) by
// least squares. Needs at least three distinct x values and positive data.
SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Same, reading two columns of a CSV. When metric is set, only rows whose
// "metric" column equals it are used.
SlopeFit fit_slope_csv(std::istream& csv, const std::string& x_col,
                       const std::string& y_col,
                       const std::optional<std::string>& metric = std::nullopt);

}  // namespace sparsedp::harness

#endif  // SPARSEDP_HARNESS_SLOPE_H_
