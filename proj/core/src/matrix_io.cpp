// SPDX-License-Identifier: Apache-2.0
#include "tlut/matrix_io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "tlut/errors.hpp"

namespace tlut::io {

namespace {

std::vector<std::string> csv_tokens(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string token;
    for (char c : line) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        if (!token.empty()) tokens.push_back(std::move(token));
        token.clear();
      } else {
        token.push_back(c);
      }
    }
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return tokens;
}

fp16::Half parse_half_token(const std::string& token) {
  if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(token.data() + 2, token.data() + token.size(), value, 16);
    if (ec != std::errc() || ptr != token.data() + token.size() || value > 0xFFFF) {
      throw ConfigError("bad fp16 bit pattern '" + token + "'");
    }
    return fp16::Half::from_bits(static_cast<std::uint16_t>(value));
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ConfigError("bad fp16 activation '" + token + "'");
  }
  return fp16::from_double(value);
}

std::int8_t parse_int8_token(const std::string& token) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < -128 || value > 127) {
    throw ConfigError("bad int8 activation '" + token + "'");
  }
  return static_cast<std::int8_t>(value);
}

}  // namespace

TernaryMatrix read_matrix_text(std::istream& in) {
  std::vector<Trit> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t width = 0;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      switch (c) {
        case '+': data.push_back(Trit::Plus); break;
        case '0': data.push_back(Trit::Zero); break;
        case '-': data.push_back(Trit::Minus); break;
        default:
          throw ConfigError("invalid trit symbol '" + std::string(1, c) + "' on line " + std::to_string(line_no));
      }
      ++width;
    }
    if (width == 0) continue;
    if (rows == 0) cols = width;
    if (width != cols) {
      throw ConfigError("row on line " + std::to_string(line_no) + " has " + std::to_string(width) +
                        " trits, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw ConfigError("matrix file contains no rows");
  return TernaryMatrix(rows, cols, std::move(data));
}

void write_matrix_text(std::ostream& out, const TernaryMatrix& weights) {
  for (std::size_t r = 0; r < weights.rows(); ++r) {
    for (Trit t : weights.row(r)) out << (t == Trit::Plus ? '+' : t == Trit::Minus ? '-' : '0');
    out << '\n';
  }
}

ActivationVector read_activations_csv(std::istream& in, ActivationType act) {
  const auto tokens = csv_tokens(in);
  if (act == ActivationType::Int8) {
    std::vector<std::int8_t> values;
    values.reserve(tokens.size());
    for (const auto& t : tokens) values.push_back(parse_int8_token(t));
    return ActivationVector::from_int8(std::move(values));
  }
  std::vector<fp16::Half> values;
  values.reserve(tokens.size());
  for (const auto& t : tokens) values.push_back(parse_half_token(t));
  return ActivationVector::from_fp16(std::move(values));
}

void write_activations_csv(std::ostream& out, const ActivationVector& x) {
  if (x.activation() == ActivationType::Int8) {
    for (std::int8_t v : x.int8_values()) out << static_cast<int>(v) << '\n';
  } else {
    for (fp16::Half v : x.fp16_values()) out << format_double(fp16::to_double(v)) << '\n';
  }
}

ActivationVector parse_activations_binary(std::span<const std::uint8_t> bytes, ActivationType act) {
  if (act == ActivationType::Int8) {
    std::vector<std::int8_t> values(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) values[i] = static_cast<std::int8_t>(bytes[i]);
    return ActivationVector::from_int8(std::move(values));
  }
  if (bytes.size() % 2 != 0) throw ConfigError("fp16 activation file has an odd byte count");
  std::vector<fp16::Half> values(bytes.size() / 2);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = fp16::Half::from_bits(static_cast<std::uint16_t>(bytes[2 * i] | (bytes[2 * i + 1] << 8)));
  }
  return ActivationVector::from_fp16(std::move(values));
}

std::vector<std::uint8_t> serialize_activations_binary(const ActivationVector& x) {
  std::vector<std::uint8_t> out;
  if (x.activation() == ActivationType::Int8) {
    for (std::int8_t v : x.int8_values()) out.push_back(static_cast<std::uint8_t>(v));
  } else {
    for (fp16::Half v : x.fp16_values()) {
      out.push_back(static_cast<std::uint8_t>(v.bits & 0xFF));
      out.push_back(static_cast<std::uint8_t>(v.bits >> 8));
    }
  }
  return out;
}

void write_outputs_csv(std::ostream& out, const sim::OutputVector& y) {
  if (const auto* ints = std::get_if<std::vector<std::int32_t>>(&y)) {
    out << "index,value\n";
    for (std::size_t i = 0; i < ints->size(); ++i) out << i << ',' << (*ints)[i] << '\n';
    return;
  }
  const auto& halves = std::get<std::vector<fp16::Half>>(y);
  out << "index,value,bits\n";
  std::array<char, 8> hex{};
  for (std::size_t i = 0; i < halves.size(); ++i) {
    std::snprintf(hex.data(), hex.size(), "0x%04X", static_cast<unsigned>(halves[i].bits));
    out << i << ',' << format_double(fp16::to_double(halves[i])) << ',' << hex.data() << '\n';
  }
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

void write_file_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

}  // namespace tlut::io
