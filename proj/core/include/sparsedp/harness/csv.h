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

#ifndef SPARSEDP_HARNESS_CSV_H_
#define SPARSEDP_HARNESS_CSV_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace sparsedp::harness {

// Shortest representation that reads back to the same double; "nan", "inf"
// and "-inf" for non-finite values.
std::string FormatDouble(double v);

// Comma-separated output with a header row. Fields must not contain commas,
// quotes or newlines; that is checked.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void Row(const std::vector<std::string>& fields);
  std::size_t rows() const { return rows_; }

 private:
  std::ostream& out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // Index of a header column; throws InvalidArgument if absent.
  std::size_t Column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace sparsedp::harness

#endif  // SPARSEDP_HARNESS_CSV_H_
