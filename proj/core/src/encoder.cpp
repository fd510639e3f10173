// SPDX-License-Identifier: Apache-2.0
#include "tlut/encoder.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "tlut/errors.hpp"

namespace tlut::enc {

namespace {

constexpr std::uint8_t kMagic[4] = {'T', 'L', 'U', 'T'};

void check_group_size(int group_size) {
  if (group_size < 1 || group_size > kMaxGroupSize) {
    throw InvalidArgument("group size must be in [1, 8], got " + std::to_string(group_size));
  }
}

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void write(std::uint32_t value, int width) {
    for (int b = 0; b < width; ++b) {
      if (bit_ % 8 == 0) out_.push_back(0);
      if ((value >> b) & 1u) out_.back() |= static_cast<std::uint8_t>(1u << (bit_ % 8));
      ++bit_;
    }
  }

 private:
  std::vector<std::uint8_t>& out_;
  std::size_t bit_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint32_t read(int width) {
    std::uint32_t value = 0;
    for (int b = 0; b < width; ++b) {
      const std::uint8_t byte = in_[bit_ / 8];
      if ((byte >> (bit_ % 8)) & 1u) value |= 1u << b;
      ++bit_;
    }
    return value;
  }

  std::size_t position() const noexcept { return bit_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t bit_ = 0;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{in[i]} << (8 * i);
  return v;
}

}  // namespace

std::int64_t group_value(std::span<const Trit> group) {
  if (group.empty() || group.size() > static_cast<std::size_t>(kMaxGroupSize)) {
    throw InvalidArgument("group length must be in [1, 8], got " + std::to_string(group.size()));
  }
  std::int64_t v = 0;
  for (Trit t : group) v = 3 * v + to_int(t);
  return v;
}

GroupKey encode_group(std::span<const Trit> group) {
  const std::int64_t v = group_value(group);
  return GroupKey{v < 0, static_cast<std::uint32_t>(v < 0 ? -v : v), static_cast<int>(group.size())};
}

void validate_key(const GroupKey& key) {
  check_group_size(key.group_size);
  if (key.magnitude > lut_table_size(key.group_size)) {
    throw CorruptStream("group key magnitude " + std::to_string(key.magnitude) +
                        " exceeds table size for mu=" + std::to_string(key.group_size));
  }
  if (key.negative && key.magnitude == 0) {
    throw CorruptStream("non-canonical zero group key (sign=1, magnitude=0)");
  }
}

void decode_group_into(const GroupKey& key, std::span<Trit> out) {
  validate_key(key);
  if (out.size() != static_cast<std::size_t>(key.group_size)) {
    throw InvalidArgument("decode buffer length does not match group size");
  }
  // Balanced-ternary digits of the magnitude, least significant last.
  std::int64_t rest = key.magnitude;
  for (int i = key.group_size - 1; i >= 0; --i) {
    std::int64_t digit = rest % 3;
    rest /= 3;
    if (digit == 2) {
      digit = -1;
      ++rest;
    }
    out[static_cast<std::size_t>(i)] = static_cast<Trit>(key.negative ? -digit : digit);
  }
}

std::vector<Trit> decode_group(const GroupKey& key) {
  check_group_size(key.group_size);
  std::vector<Trit> out(static_cast<std::size_t>(key.group_size));
  decode_group_into(key, out);
  return out;
}

GroupKey negated(const GroupKey& key) {
  GroupKey k = key;
  if (k.magnitude != 0) k.negative = !k.negative;
  return k;
}

int magnitude_width(int group_size) {
  check_group_size(group_size);
  // ceil(log2(T + 1)) where T + 1 codes include the all-zero group.
  const auto codes = static_cast<std::uint64_t>(lut_table_size(group_size) + 1);
  return static_cast<int>(std::bit_width(codes - 1));
}

int key_width(int group_size) { return magnitude_width(group_size) + 1; }

std::uint32_t pack_key(const GroupKey& key) {
  validate_key(key);
  const int wm = magnitude_width(key.group_size);
  return (key.negative ? 1u << wm : 0u) | key.magnitude;
}

GroupKey unpack_key(std::uint32_t word, int group_size) {
  const int wm = magnitude_width(group_size);
  GroupKey key{((word >> wm) & 1u) != 0, word & ((1u << wm) - 1u), group_size};
  validate_key(key);
  return key;
}

std::size_t EncodedWeightStream::groups_per_row() const noexcept {
  return (cols + static_cast<std::size_t>(group_size) - 1) / static_cast<std::size_t>(group_size);
}

std::size_t EncodedWeightStream::payload_bits() const noexcept {
  return std::size_t{rows} * groups_per_row() * static_cast<std::size_t>(key_width(group_size));
}

double nominal_bits_per_weight(int group_size) {
  return static_cast<double>(key_width(group_size)) / group_size;
}

double EncodedWeightStream::bits_per_weight() const noexcept {
  const std::size_t weights = std::size_t{rows} * cols;
  return weights == 0 ? 0.0 : static_cast<double>(payload_bits()) / static_cast<double>(weights);
}

std::vector<GroupKey> encode_keys(const TernaryMatrix& weights, int group_size) {
  check_group_size(group_size);
  const std::size_t mu = static_cast<std::size_t>(group_size);
  const std::size_t groups = (weights.cols() + mu - 1) / mu;
  std::vector<GroupKey> keys;
  keys.reserve(weights.rows() * groups);
  std::vector<Trit> buffer(mu);
  for (std::size_t r = 0; r < weights.rows(); ++r) {
    const auto row = weights.row(r);
    for (std::size_t g = 0; g < groups; ++g) {
      const std::size_t begin = g * mu;
      const std::size_t end = std::min(begin + mu, row.size());
      std::fill(buffer.begin(), buffer.end(), Trit::Zero);
      std::copy(row.begin() + static_cast<std::ptrdiff_t>(begin),
                row.begin() + static_cast<std::ptrdiff_t>(end), buffer.begin());
      keys.push_back(encode_group(buffer));
    }
  }
  return keys;
}

EncodedWeightStream encode_matrix(const TernaryMatrix& weights, int group_size) {
  check_group_size(group_size);
  if (weights.rows() > UINT32_MAX || weights.cols() > UINT32_MAX) {
    throw InvalidArgument("matrix too large for the stream header");
  }
  EncodedWeightStream stream;
  stream.group_size = group_size;
  stream.rows = static_cast<std::uint32_t>(weights.rows());
  stream.cols = static_cast<std::uint32_t>(weights.cols());
  const int width = key_width(group_size);
  BitWriter writer(stream.payload);
  for (const GroupKey& key : encode_keys(weights, group_size)) writer.write(pack_key(key), width);
  return stream;
}

TernaryMatrix decode_matrix(const EncodedWeightStream& stream) {
  check_group_size(stream.group_size);
  const std::size_t expected_bytes = (stream.payload_bits() + 7) / 8;
  if (stream.payload.size() != expected_bytes) {
    throw CorruptStream("payload is " + std::to_string(stream.payload.size()) + " bytes, expected " +
                        std::to_string(expected_bytes));
  }
  const std::size_t mu = static_cast<std::size_t>(stream.group_size);
  const int width = key_width(stream.group_size);
  const std::size_t groups = stream.groups_per_row();
  std::vector<Trit> data;
  data.reserve(std::size_t{stream.rows} * stream.cols);
  std::vector<Trit> buffer(mu);
  BitReader reader(stream.payload);
  for (std::size_t r = 0; r < stream.rows; ++r) {
    for (std::size_t g = 0; g < groups; ++g) {
      decode_group_into(unpack_key(reader.read(width), stream.group_size), buffer);
      const std::size_t keep = std::min(mu, std::size_t{stream.cols} - g * mu);
      for (std::size_t i = keep; i < mu; ++i) {
        if (buffer[i] != Trit::Zero) throw CorruptStream("non-zero padding trit in edge group");
      }
      data.insert(data.end(), buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(keep));
    }
  }
  for (std::size_t b = reader.position(); b < stream.payload.size() * 8; ++b) {
    if ((stream.payload[b / 8] >> (b % 8)) & 1u) throw CorruptStream("non-zero stream padding bits");
  }
  return TernaryMatrix(stream.rows, stream.cols, std::move(data));
}

std::vector<std::uint8_t> serialize(const EncodedWeightStream& stream) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kStreamVersion);
  out.push_back(static_cast<std::uint8_t>(stream.group_size));
  put_u32(out, stream.rows);
  put_u32(out, stream.cols);
  out.insert(out.end(), stream.payload.begin(), stream.payload.end());
  return out;
}

EncodedWeightStream parse_stream(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw CorruptStream("stream shorter than header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw CorruptStream("bad magic (expected \"TLUT\")");
  }
  if (bytes[4] != kStreamVersion) {
    throw CorruptStream("unsupported stream version " + std::to_string(bytes[4]));
  }
  EncodedWeightStream stream;
  stream.group_size = bytes[5];
  if (stream.group_size < 1 || stream.group_size > kMaxGroupSize) {
    throw CorruptStream("invalid group size " + std::to_string(stream.group_size));
  }
  stream.rows = get_u32(bytes.subspan(6, 4));
  stream.cols = get_u32(bytes.subspan(10, 4));
  const auto payload = bytes.subspan(kHeaderBytes);
  const std::size_t expected = (stream.payload_bits() + 7) / 8;
  if (payload.size() < expected) throw CorruptStream("truncated payload");
  if (payload.size() > expected) throw CorruptStream("trailing bytes after payload");
  if (const auto used = stream.payload_bits() % 8; used != 0 && (payload.back() >> used) != 0) {
    throw CorruptStream("non-zero padding bits after the last key");
  }
  stream.payload.assign(payload.begin(), payload.end());
  return stream;
}

}  // namespace tlut::enc
