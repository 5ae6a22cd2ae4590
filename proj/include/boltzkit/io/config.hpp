// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace boltzkit {

/// Flat INI-style config: [section] headers, key = value lines, '#'
/// comments. Values stay strings until typed getters pull them out; every
/// get is recorded so validate_known() can list unknown keys (typos never
/// fall back to defaults silently).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  void apply_override(const std::string& dotted_key, const std::string& value);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         std::optional<std::string> fallback = {}) const;
  double get_double(const std::string& section, const std::string& key,
                    std::optional<double> fallback = {}) const;
  long get_int(const std::string& section, const std::string& key,
               std::optional<long> fallback = {}) const;
  bool get_bool(const std::string& section, const std::string& key,
                std::optional<bool> fallback = {}) const;
  std::vector<double> get_list(const std::string& section,
                               const std::string& key,
                               std::optional<std::vector<double>> fallback = {}) const;

  /// Throws ConfigError listing unread keys inside any section this run
  /// touched. Whole sections left untouched are fine (they belong to other
  /// subcommands sharing the file).
  void validate_known() const;

  /// section -> key -> value, for manifests.
  const std::map<std::string, std::map<std::string, std::string>>& raw() const {
    return data_;
  }

 private:
  std::string fetch(const std::string& section, const std::string& key,
                    bool* found) const;
  std::map<std::string, std::map<std::string, std::string>> data_;
  mutable std::set<std::string> touched_;
};

}  // namespace boltzkit
