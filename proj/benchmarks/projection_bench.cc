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

#include <benchmark/benchmark.h>

#include "sparsedp/geometry.h"
#include "sparsedp/mean_estimation.h"
#include "sparsedp/rng.h"

namespace sparsedp {
namespace {

Vector Gaussian(std::size_t d, RngStream& r) {
  Vector v(d);
  for (std::size_t j = 0; j < d; ++j) v[j] = r.StandardNormal();
  return v;
}

void BM_ProjectL1Ball(benchmark::State& state) {
  const std::size_t d = state.range(0);
  RngStream r(1, 0);
  const Vector v = Gaussian(d, r);
  for (auto _ : state) benchmark::DoNotOptimize(project_l1_ball(v, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectL1Ball)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

void BM_ProjectionMechanism(benchmark::State& state) {
  const std::size_t d = state.range(0), s = 8, n = 1024;
  RngStream r(2, 0);
  Vector zbar = Vector::Zero(d);
  for (auto j : r.SampleWithoutReplacement(d, s)) zbar[j] = r.StandardNormal();
  zbar *= 0.5 / zbar.norm();
  std::uint64_t k = 0;
  for (auto _ : state) {
    RngStream rr = r.Substream(k++);
    benchmark::DoNotOptimize(projection_mechanism(zbar, {1.0, 1e-6}, n, 1.0, s, rr));
  }
}
BENCHMARK(BM_ProjectionMechanism)->RangeMultiplier(4)->Range(1024, 1 << 15);

}  // namespace
}  // namespace sparsedp
