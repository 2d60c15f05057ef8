#pragma once

#include <stdexcept>
#include <string>

namespace conelip {

/// Malformed or inconsistent input: dimension mismatch, violated
/// precondition, out-of-range parameter.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request that is well formed but too large to honour (vertex caps,
/// iteration limits).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conelip
