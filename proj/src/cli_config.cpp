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

#include <algorithm>
#include <charconv>
#include <istream>
#include <set>

#include "wigent/cli.hpp"

namespace wigent::cli {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"state", {"family", "s", "eta", "r", "epsilon", "gamma", "cutoff", "mean", "cov"}},
      {"criterion", {"name", "transform", "theta", "region", "alphas"}},
      {"quadrature", {"rule", "order", "tolerance"}},
      {"output", {"format", "path", "timing"}},
      {"grid", {"s", "eta", "r", "epsilon", "gamma"}},
      {"sweep", {"criteria"}},
      {"oracle", {"check", "optimize"}},
      {"run", {"workers"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void Settings::set(const std::string& key, std::string value, std::string origin) {
  if (key.rfind("grid.", 0) == 0 &&
      std::find(grid_order_.begin(), grid_order_.end(), key) == grid_order_.end()) {
    grid_order_.push_back(key);
  }
  values_[key] = {std::move(value), std::move(origin)};
}

std::optional<Setting> Settings::find(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Settings::text(const std::string& key, const std::string& fallback) const {
  auto s = find(key);
  return s ? s->value : fallback;
}

std::optional<double> Settings::number(const std::string& key) const {
  auto s = find(key);
  if (!s) return std::nullopt;
  double v = 0.0;
  const char* b = s->value.data();
  const char* e = b + s->value.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) {
    throw ConfigError(s->origin + ": " + key + ": expected a number, got '" + s->value + "'");
  }
  return v;
}

double Settings::number(const std::string& key, double fallback) const {
  return number(key).value_or(fallback);
}

int Settings::integer(const std::string& key, int fallback) const {
  auto s = find(key);
  if (!s) return fallback;
  int v = 0;
  const char* b = s->value.data();
  const char* e = b + s->value.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) {
    throw ConfigError(s->origin + ": " + key + ": expected an integer, got '" + s->value + "'");
  }
  return v;
}

bool Settings::flag(const std::string& key, bool fallback) const {
  auto s = find(key);
  if (!s) return fallback;
  if (s->value == "true" || s->value == "1" || s->value == "yes") return true;
  if (s->value == "false" || s->value == "0" || s->value == "no") return false;
  throw ConfigError(s->origin + ": " + key + ": expected true or false, got '" + s->value + "'");
}

void parse_config(std::istream& in, const std::string& name, Settings& out) {
  std::string line, section;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section)) {
        throw ConfigError(where + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().at(section).count(key)) {
      throw ConfigError(where + ": unknown key '" + key + "' in section [" + section + "]");
    }
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    out.set(section + "." + key, value, where);
  }
}

}  // namespace wigent::cli
