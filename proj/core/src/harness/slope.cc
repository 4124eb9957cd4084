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

#include "sparsedp/harness/slope.h"

#include <cmath>
#include <map>

#include "sparsedp/error.h"
#include "sparsedp/harness/config.h"
#include "sparsedp/harness/csv.h"
#include "sparsedp/harness/grid.h"

namespace sparsedp::harness {

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  SPARSEDP_REQUIRE(x.size() == y.size(), "fit_slope: x and y differ in length");
  std::map<double, std::vector<double>> groups;
  for (std::size_t i = 0; i < x.size(); ++i) {
    SPARSEDP_REQUIRE(x[i] > 0 && y[i] > 0 && std::isfinite(x[i]) &&
                         std::isfinite(y[i]),
                     "fit_slope: values must be positive and finite");
    groups[x[i]].push_back(y[i]);
  }
  SPARSEDP_REQUIRE(groups.size() >= 3,
                   "fit_slope: need at least three distinct x values");
  SlopeFit f;
  std::vector<double> lx;
  std::vector<double> ly;
  for (auto& [xv, ys] : groups) {
    f.x.push_back(xv);
    f.medians.push_back(median(ys));
    lx.push_back(std::log(xv));
    ly.push_back(std::log(f.medians.back()));
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - f.intercept - f.slope * lx[i];
    sse += r * r;
  }
  f.std_error = std::sqrt(sse / (k - 2.0) / sxx);
  return f;
}

SlopeFit fit_slope_csv(std::istream& csv, const std::string& x_col,
                       const std::string& y_col,
                       const std::optional<std::string>& metric) {
  const CsvTable t = read_csv(csv);
  const std::size_t xi = t.Column(x_col);
  const std::size_t yi = t.Column(y_col);
  const std::size_t mi = metric ? t.Column("metric") : 0;
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : t.rows) {
    if (metric && row[mi] != *metric) continue;
    x.push_back(ParseDouble(row[xi]));
    y.push_back(ParseDouble(row[yi]));
  }
  return fit_slope(x, y);
}

}  // namespace sparsedp::harness
