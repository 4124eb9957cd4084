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

#ifndef SPARSEDP_CALIBRATED_CONSTANTS_H_
#define SPARSEDP_CALIBRATED_CONSTANTS_H_

// Frozen output of `sparsedp calibrate`. Regenerate with the command below
// and paste the emitted table; do not edit by hand.
//
//   sparsedp calibrate --seed 7
//
// C': stopping time, n = 1024, delta = 1e-08, 500 runs, P[T <= C' n / ln(2/delta)] = 0.156.
// C: sparse least squares, n = 4096, d = 4096, s = 4, eps = 1, delta = 1e-08, 200 runs, success = 0.5.

namespace sparsedp::calibrated {

inline constexpr double kStoppingCPrime = 0.8586289887964514;
inline constexpr double kUtilityC = 0.0027823336713189337;

}  // namespace sparsedp::calibrated

#endif  // SPARSEDP_CALIBRATED_CONSTANTS_H_
