// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/io/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "boltzkit/errors.hpp"

namespace boltzkit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config c;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      c.data_[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": key outside any [section]");
    c.data_[section][key] = value;
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_string(ss.str());
}

void Config::apply_override(const std::string& dotted_key,
                            const std::string& value) {
  auto dot = dotted_key.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override '" + dotted_key +
                      "': expected section.key=value");
  data_[dotted_key.substr(0, dot)][dotted_key.substr(dot + 1)] = value;
}

std::string Config::fetch(const std::string& section, const std::string& key,
                          bool* found) const {
  touched_.insert(section + "." + key);
  auto s = data_.find(section);
  if (s == data_.end()) {
    *found = false;
    return {};
  }
  auto k = s->second.find(key);
  if (k == s->second.end()) {
    *found = false;
    return {};
  }
  *found = true;
  return k->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  bool found = false;
  fetch(section, key, &found);
  return found;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key,
                               std::optional<std::string> fallback) const {
  bool found = false;
  std::string v = fetch(section, key, &found);
  if (found) return v;
  if (fallback) return *fallback;
  throw ConfigError("missing required config key [" + section + "] " + key);
}

double Config::get_double(const std::string& section, const std::string& key,
                          std::optional<double> fallback) const {
  bool found = false;
  std::string v = fetch(section, key, &found);
  if (!found) {
    if (fallback) return *fallback;
    throw ConfigError("missing required config key [" + section + "] " + key);
  }
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (trim(v.substr(used)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key [" + section + "] " + key +
                    ": not a number: '" + v + "'");
}

long Config::get_int(const std::string& section, const std::string& key,
                     std::optional<long> fallback) const {
  bool found = false;
  std::string v = fetch(section, key, &found);
  if (!found) {
    if (fallback) return *fallback;
    throw ConfigError("missing required config key [" + section + "] " + key);
  }
  try {
    std::size_t used = 0;
    long d = std::stol(v, &used);
    if (trim(v.substr(used)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key [" + section + "] " + key +
                    ": not an integer: '" + v + "'");
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      std::optional<bool> fallback) const {
  bool found = false;
  std::string v = fetch(section, key, &found);
  if (!found) {
    if (fallback) return *fallback;
    throw ConfigError("missing required config key [" + section + "] " + key);
  }
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key [" + section + "] " + key +
                    ": not a boolean: '" + v + "'");
}

std::vector<double> Config::get_list(
    const std::string& section, const std::string& key,
    std::optional<std::vector<double>> fallback) const {
  bool found = false;
  std::string v = fetch(section, key, &found);
  if (!found) {
    if (fallback) return *fallback;
    throw ConfigError("missing required config key [" + section + "] " + key);
  }
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("config key [" + section + "] " + key +
                        ": bad list entry '" + item + "'");
    }
  }
  return out;
}

void Config::validate_known() const {
  // section granularity: a section nothing touched belongs to some other
  // subcommand and is left alone; inside a touched section every key must
  // have been read (typo protection)
  std::vector<std::string> unknown;
  for (const auto& [section, kv] : data_) {
    bool touched_any = false;
    for (const auto& [key, value] : kv)
      touched_any = touched_any || touched_.count(section + "." + key) > 0;
    if (!touched_any) continue;
    for (const auto& [key, value] : kv)
      if (!touched_.count(section + "." + key))
        unknown.push_back("[" + section + "] " + key);
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
    throw ConfigError("unknown config keys: " + list);
  }
}

}  // namespace boltzkit
