// SPDX-License-Identifier: Apache-2.0
#include "manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "tlut/errors.hpp"
#include "tlut/matrix_io.hpp"

namespace tlut::cli {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw ConfigError("sha256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(io::read_file_text(path)); }

void RunManifest::add_digest(const std::filesystem::path& path) { digests[path.string()] = sha256_file(path); }

void RunManifest::write_for(const std::filesystem::path& output) const {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::array<char, 32> stamp{};
  std::strftime(stamp.data(), stamp.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);

  nlohmann::json j;
  j["command"] = command;
  j["params"] = params;
  j["input_sha256"] = digests;
  j["tool_version"] = TLUT_VERSION;
  j["timestamp"] = stamp.data();
  io::write_file_text(output.string() + ".manifest.json", j.dump(2) + "\n");
}

}  // namespace tlut::cli
