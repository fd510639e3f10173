// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace tlut::cli {

/// Written next to every output file as <out>.manifest.json.
struct RunManifest {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json digests = nlohmann::json::object();  // input path -> sha256 hex

  void add_digest(const std::filesystem::path& path);
  /// Keys are emitted sorted so only the timestamp varies between runs.
  void write_for(const std::filesystem::path& output) const;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace tlut::cli
