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

#ifndef SPARSEDP_HARNESS_CONFIG_H_
#define SPARSEDP_HARNESS_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sparsedp::harness {

// Flat key = value configuration. Lines starting with '#' and blank lines
// are ignored; a later assignment to the same key wins. Values are parsed
// with std::from_chars, so the result never depends on the locale.
class Config {
 public:
  static Config Parse(std::istream& in);
  static Config Load(const std::string& path);

  void Set(const std::string& key, const std::string& value);
  // Applies "key=value" (as given on the command line).
  void SetAssignment(const std::string& assignment);
  bool Has(const std::string& key) const;

  std::string GetString(const std::string& key, const std::string& def) const;
  double GetDouble(const std::string& key, double def) const;
  std::uint64_t GetU64(const std::string& key, std::uint64_t def) const;
  bool GetBool(const std::string& key, bool def) const;
  // Comma-separated list; a scalar value is a list of one.
  std::vector<double> GetDoubleList(const std::string& key,
                                    const std::vector<double>& def) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

double ParseDouble(const std::string& s);
std::uint64_t ParseU64(const std::string& s);
// Splits on ',' and trims blanks.
std::vector<std::string> SplitList(const std::string& s);

}  // namespace sparsedp::harness

#endif  // SPARSEDP_HARNESS_CONFIG_H_
