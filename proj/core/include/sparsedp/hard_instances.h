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

#ifndef SPARSEDP_HARD_INSTANCES_H_
#define SPARSEDP_HARD_INSTANCES_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "sparsedp/dataset.h"
#include "sparsedp/rng.h"
#include "sparsedp/sparse_vector.h"

namespace sparsedp {

// Points are s-sparse with every nonzero equal to 1/sqrt(s).
struct Packing {
  std::size_t s = 0;
  std::size_t d = 0;
  std::vector<SparseVector> points;
  std::vector<std::vector<std::size_t>> supports;
  double min_pairwise_l2 = 0.0;  // +inf for fewer than two points
  bool exhaustive = false;       // every s-subset was considered
  std::size_t candidates = 0;    // subsets considered
};

struct PackingOptions {
  std::size_t cap = 1000000;
  // Above this many s-subsets the candidates are sampled instead.
  double enumeration_limit = 1e6;
  std::size_t samples = 200000;
};

// (d/s - 1/2)^(s/2).
double packing_lower_bound(std::size_t s, std::size_t d);

// Greedy packing: scans s-subsets (lexicographically when there are at most
// enumeration_limit of them, else uniformly sampled) and keeps a subset when
// it shares fewer than 3s/4 indices with every kept one. For such codewords
// ||u - v||_0 = 2(s - |common|) > s/2, so ||u - v||_2 > 1/sqrt(2).
// Stops at cap points. Requires 1 <= s <= d/2.
Packing greedy_sparse_packing(std::size_t s, std::size_t d, RngStream& rng,
                              const PackingOptions& opts = {});

struct HardDataset {
  Dataset S;
  std::size_t l = 0;  // index of the packing point that was copied
};

// n copies of a uniformly chosen packing point.
HardDataset packing_hard_dataset(const Packing& P, std::size_t n,
                                 RngStream& rng);

// Draws one block: n0 points in dimension t.
using BlockSampler = std::function<Dataset(RngStream& rng)>;

struct BlockDiagonalDataset {
  Dataset S;
  std::vector<Vector> block_means;  // mean of each block, dimension t
};

// K blocks from block_sampler, block k at rows [k n0, (k+1) n0) and columns
// [k t, (k+1) t), zero rows after the last block. Block k draws from
// rng.Substream(k). Requires K <= min(n/n0, d/t).
BlockDiagonalDataset block_diagonal_dataset(const BlockSampler& block_sampler,
                                            std::size_t n0, std::size_t t,
                                            std::size_t K, std::size_t n,
                                            std::size_t d, RngStream& rng);

// (n0/n) [mean_1 | ... | mean_K | 0].
Vector block_diagonal_mean(const std::vector<Vector>& block_means,
                           std::size_t n0, std::size_t n, std::size_t d);

// Appends n - |S| zero points.
Dataset zero_pad_dataset(const Dataset& S, std::size_t n);

}  // namespace sparsedp

#endif  // SPARSEDP_HARD_INSTANCES_H_
