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

#include "sparsedp/dataset_io.h"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sparsedp/error.h"

namespace sparsedp {
namespace {

double ParseDouble(std::string_view tok, std::size_t line_no) {
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("dataset line " + std::to_string(line_no) +
                          ": bad number '" + std::string(tok) + "'");
  }
  return v;
}

std::size_t ParseIndex(std::string_view tok, std::size_t line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InvalidArgument("dataset line " + std::to_string(line_no) +
                          ": bad index '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Dataset read_dataset(std::istream& in) {
  Dataset S;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t labelled = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      std::string dt, st, lt;
      if (!(ls >> dt >> st >> lt)) {
        throw InvalidArgument("dataset header must be 'd s L'");
      }
      S.bounds.d = ParseIndex(dt, line_no);
      S.bounds.s = ParseIndex(st, line_no);
      S.bounds.L = ParseDouble(lt, line_no);
      SPARSEDP_REQUIRE(S.bounds.d > 0, "dataset header: d must be positive");
      have_header = true;
      continue;
    }
    std::vector<std::pair<std::size_t, double>> entries;
    bool has_label = false;
    double label = 0.0;
    std::string tok;
    while (ls >> tok) {
      if (tok.rfind("label=", 0) == 0) {
        label = ParseDouble(std::string_view(tok).substr(6), line_no);
        has_label = true;
        continue;
      }
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        throw InvalidArgument("dataset line " + std::to_string(line_no) +
                              ": expected index:value, got '" + tok + "'");
      }
      entries.emplace_back(
          ParseIndex(std::string_view(tok).substr(0, colon), line_no),
          ParseDouble(std::string_view(tok).substr(colon + 1), line_no));
    }
    S.points.emplace_back(S.bounds.d, std::move(entries));
    if (has_label) {
      ++labelled;
      S.labels.resize(S.points.size(), 0.0);
      S.labels.back() = label;
    }
  }
  SPARSEDP_REQUIRE(have_header, "dataset: missing header");
  if (labelled != 0 && labelled != S.points.size()) {
    throw InvalidArgument("dataset: labels present on some points only");
  }
  return S;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& S) {
  out.imbue(std::locale::classic());
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << S.bounds.d << ' ' << S.bounds.s << ' ' << S.bounds.L << '\n';
  for (std::size_t i = 0; i < S.points.size(); ++i) {
    const auto& z = S.points[i];
    bool first = true;
    if (S.has_labels()) {
      out << "label=" << S.labels[i];
      first = false;
    }
    for (std::size_t k = 0; k < z.nnz(); ++k) {
      if (!first) out << ' ';
      out << z.indices()[k] << ':' << z.values()[k];
      first = false;
    }
    out << '\n';
  }
}

void write_dataset_file(const std::string& path, const Dataset& S) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_dataset(out, S);
}

}  // namespace sparsedp
