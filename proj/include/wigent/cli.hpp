// Copyright 2026 The wigent Authors
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

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wigent/core.hpp"

namespace wigent::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitQuadrature = 3;
inline constexpr int kExitCutoff = 4;

// Bad configuration; the message names the file and line or the flag.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct Setting {
  std::string value;
  std::string origin;  // "file:line" or "--flag"
};

// Flat "section.key" settings from a config file, overridden by flags.
class Settings {
 public:
  void set(const std::string& key, std::string value, std::string origin);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<Setting> find(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  std::optional<double> number(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  // Grid keys in the order they were declared.
  const std::vector<std::string>& grid_order() const { return grid_order_; }

 private:
  std::map<std::string, Setting> values_;
  std::vector<std::string> grid_order_;
};

// Parses "[section]" headers and "key = value" lines; '#' and ';' start
// comments. Throws ConfigError on unknown sections or keys.
void parse_config(std::istream& in, const std::string& name, Settings& out);

// Entry point shared by the binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wigent::cli
