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

#include "sparsedp/harness/csv.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "sparsedp/error.h"
#include "sparsedp/harness/config.h"

namespace sparsedp::harness {

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw InternalConsistencyError("FormatDouble failed");
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  SPARSEDP_REQUIRE(!header.empty(), "CsvWriter: empty header");
  Row(header);
  rows_ = 0;
}

void CsvWriter::Row(const std::vector<std::string>& fields) {
  SPARSEDP_REQUIRE(fields.size() == columns_, "CsvWriter: wrong number of fields");
  for (const auto& f : fields) {
    SPARSEDP_REQUIRE(f.find_first_of(",\"\n\r") == std::string::npos,
                     "CsvWriter: field needs quoting: '" + f + "'");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
  ++rows_;
}

std::size_t CsvTable::Column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidArgument("csv: no column '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitList(line);
    if (first) {
      t.header = std::move(fields);
      first = false;
      continue;
    }
    SPARSEDP_REQUIRE(fields.size() == t.header.size(),
                     "csv: row has " + std::to_string(fields.size()) +
                         " fields, header has " +
                         std::to_string(t.header.size()));
    t.rows.push_back(std::move(fields));
  }
  SPARSEDP_REQUIRE(!first, "csv: missing header");
  return t;
}

}  // namespace sparsedp::harness
