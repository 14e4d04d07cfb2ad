#pragma once

#include <stdexcept>
#include <string>

namespace mpng {

/// Invalid user-supplied parameters (rates, alpha, counts).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data that cannot be processed (non-planar input, malformed files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Hierarchy bookkeeping (maps, ledgers) does not match the graphs it describes.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mpng
