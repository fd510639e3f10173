// SPDX-License-Identifier: Apache-2.0
#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ini.hpp"
#include "tlut/errors.hpp"

namespace tlut::detail {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::optional<std::string> IniSection::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const std::string& IniSection::require(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  throw ConfigError("section [" + name + "] is missing key '" + key + "'");
}

std::optional<double> IniSection::find_double(const std::string& key) const {
  const auto text = find(key);
  if (!text) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
  if (ec != std::errc() || ptr != text->data() + text->size()) {
    throw ConfigError("section [" + name + "] key '" + key + "' is not a number: '" + *text + "'");
  }
  return value;
}

double IniSection::require_double(const std::string& key) const {
  require(key);
  return *find_double(key);
}

int IniSection::require_int(const std::string& key) const {
  const auto& text = require(key);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("section [" + name + "] key '" + key + "' is not an integer: '" + text + "'");
  }
  return value;
}

std::vector<IniSection> parse_ini(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("INI syntax error: ") + e.what());
  }
  std::vector<IniSection> sections;
  for (const auto& [name, child] : tree) {
    if (child.empty()) throw ConfigError("key '" + name + "' appears outside any section");
    IniSection section{trim(name), {}};
    for (const auto& [key, value] : child) section.entries.emplace_back(trim(key), trim(value.data()));
    sections.push_back(std::move(section));
  }
  return sections;
}

}  // namespace tlut::detail
