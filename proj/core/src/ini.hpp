// SPDX-License-Identifier: Apache-2.0
// Internal: INI reading shared by the coefficient, SOTA and sweep files.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tlut::detail {

struct IniSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> find(const std::string& key) const;
  /// Throws ConfigError naming the section when absent.
  const std::string& require(const std::string& key) const;
  double require_double(const std::string& key) const;
  std::optional<double> find_double(const std::string& key) const;
  int require_int(const std::string& key) const;
};

/// Sections in file order. Throws ConfigError on syntax errors.
std::vector<IniSection> parse_ini(const std::string& text);

}  // namespace tlut::detail
