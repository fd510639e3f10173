// SPDX-License-Identifier: Apache-2.0
//
// File formats for weights, activations and simulator outputs.
//
// Matrix text: one row per line, one symbol per trit ('-', '0', '+');
// whitespace inside a line is ignored, blank lines and '#' comments skipped.
//
// Activation CSV: decimal values separated by commas and/or whitespace.
// FP16 values are rounded to nearest-even binary16; a token of the form
// 0xHHHH is taken as raw binary16 bits.
//
// Activation binary: INT8 as raw two's-complement bytes, FP16 as
// little-endian 16-bit words.
#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tlut/lut_engine.hpp"
#include "tlut/types.hpp"

namespace tlut::io {

TernaryMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const TernaryMatrix& weights);

ActivationVector read_activations_csv(std::istream& in, ActivationType act);
void write_activations_csv(std::ostream& out, const ActivationVector& x);

ActivationVector parse_activations_binary(std::span<const std::uint8_t> bytes, ActivationType act);
std::vector<std::uint8_t> serialize_activations_binary(const ActivationVector& x);

/// "index,value" for INT8; "index,value,bits" for FP16 (bits as 0xHHHH).
void write_outputs_csv(std::ostream& out, const sim::OutputVector& y);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tlut::io
