// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tlut {

/// Bad arguments: shape mismatches, out-of-range parameters, unknown kinds.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed encoded weight stream or invalid group key.
class CorruptStream : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle comparison disagreed with the simulated or constructed result.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A DSE query had an empty feasible set.
class NoFeasibleDesign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or malformed configuration / input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tlut
