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

#ifndef SPARSEDP_DATASET_IO_H_
#define SPARSEDP_DATASET_IO_H_

#include <iosfwd>
#include <string>

#include "sparsedp/dataset.h"

namespace sparsedp {

// Text format:
//
//   d s L
//   idx:val idx:val ...          one line per point, zero-based indices
//   label=y idx:val ...          optional label token, anywhere on the line
//
// An empty line is the zero vector. Lines starting with '#' are comments.
// Either every point carries a label or none does.
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);

void write_dataset(std::ostream& out, const Dataset& S);
void write_dataset_file(const std::string& path, const Dataset& S);

}  // namespace sparsedp

#endif  // SPARSEDP_DATASET_IO_H_
