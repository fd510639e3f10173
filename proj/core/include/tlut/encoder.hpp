// SPDX-License-Identifier: Apache-2.0
//
// Offline weight encoding. A group of mu trits g maps to the base-3 value
//
//   v = sum_i g[i] * 3^(mu - 1 - i)
//
// and is stored as a sign-magnitude key: the magnitude |v| addresses the
// positive-half LUT entry and the sign bit (the key's MSB) requests a negation
// at fetch time. Magnitude 0 is the all-zero group and always has sign 0.
//
// Stream layout ("TLUT" v1):
//   bytes 0..3   magic "TLUT"
//   byte  4      version (1)
//   byte  5      mu
//   bytes 6..9   rows, u32 little-endian
//   bytes 10..13 cols, u32 little-endian
//   payload      rows * ceil(cols / mu) keys, row-major, groups along each row,
//                each key written LSB-first into a little-endian bit stream;
//                the final byte is zero-padded.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tlut/types.hpp"

namespace tlut::enc {

inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::size_t kHeaderBytes = 14;

struct GroupKey {
  bool negative = false;
  std::uint32_t magnitude = 0;
  int group_size = 1;

  friend bool operator==(const GroupKey&, const GroupKey&) = default;
};

/// Signed base-3 value of a group, first trit most significant.
std::int64_t group_value(std::span<const Trit> group);

GroupKey encode_group(std::span<const Trit> group);

/// Throws CorruptStream for (sign=1, magnitude=0) or magnitude beyond the table.
std::vector<Trit> decode_group(const GroupKey& key);
void decode_group_into(const GroupKey& key, std::span<Trit> out);

/// Throws CorruptStream if the key is not canonical for its group size.
void validate_key(const GroupKey& key);

/// The same key with its sign flipped. Zero keys are returned unchanged.
GroupKey negated(const GroupKey& key);

int magnitude_width(int group_size);
/// Total key width: magnitude bits + 1 sign bit.
int key_width(int group_size);
/// key_width / mu: the storage density without edge padding.
double nominal_bits_per_weight(int group_size);

/// Key as an integer word: sign in bit magnitude_width, magnitude below it.
std::uint32_t pack_key(const GroupKey& key);
GroupKey unpack_key(std::uint32_t word, int group_size);

struct EncodedWeightStream {
  int group_size = 1;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint8_t> payload;

  std::size_t groups_per_row() const noexcept;
  std::size_t payload_bits() const noexcept;
  /// payload_bits / (rows * cols), 0 for an empty matrix.
  double bits_per_weight() const noexcept;

  friend bool operator==(const EncodedWeightStream&, const EncodedWeightStream&) = default;
};

/// Row-major keys: rows * ceil(cols / mu), edge groups zero-padded.
std::vector<GroupKey> encode_keys(const TernaryMatrix& weights, int group_size);

EncodedWeightStream encode_matrix(const TernaryMatrix& weights, int group_size);
TernaryMatrix decode_matrix(const EncodedWeightStream& stream);

std::vector<std::uint8_t> serialize(const EncodedWeightStream& stream);
/// Throws CorruptStream on bad magic, version, group size or payload length.
EncodedWeightStream parse_stream(std::span<const std::uint8_t> bytes);

}  // namespace tlut::enc
