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

#include "sparsedp/harness/config.h"

#include <charconv>
#include <fstream>
#include <istream>

#include "sparsedp/error.h"

namespace sparsedp::harness {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double ParseDouble(const std::string& s) {
  const std::string t = Trim(s);
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  return v;
}

std::uint64_t ParseU64(const std::string& s) {
  const std::string t = Trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc() && ptr == t.data() + t.size() && !t.empty()) return v;
  // Allow integral values written as doubles, such as 1e6.
  const double dv = ParseDouble(t);
  if (dv < 0 || dv != static_cast<double>(static_cast<std::uint64_t>(dv))) {
    throw InvalidArgument("not a nonnegative integer: '" + s + "'");
  }
  return static_cast<std::uint64_t>(dv);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(Trim(s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Config Config::Parse(std::istream& in) {
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || Trim(t.substr(0, eq)).empty()) {
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": expected key = value");
    }
    c.Set(Trim(t.substr(0, eq)), Trim(t.substr(eq + 1)));
  }
  return c;
}

Config Config::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  return Parse(in);
}

void Config::Set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

void Config::SetAssignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  SPARSEDP_REQUIRE(eq != std::string::npos && eq > 0,
                   "expected key=value, got '" + assignment + "'");
  Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

bool Config::Has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::GetString(const std::string& key,
                              const std::string& def) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

double Config::GetDouble(const std::string& key, double def) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? def : ParseDouble(it->second);
}

std::uint64_t Config::GetU64(const std::string& key, std::uint64_t def) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? def : ParseU64(it->second);
}

bool Config::GetBool(const std::string& key, bool def) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw InvalidArgument("not a boolean: '" + v + "' for key " + key);
}

std::vector<double> Config::GetDoubleList(const std::string& key,
                                          const std::vector<double>& def) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  std::vector<double> out;
  for (const auto& item : SplitList(it->second)) out.push_back(ParseDouble(item));
  return out;
}

}  // namespace sparsedp::harness
