#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prt {

/// Malformed arguments: shape mismatches, bad configs, out-of-range values.
struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values or diverging optimization. `index` identifies the
/// offending batch example or training step when one exists, else -1.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what, std::ptrdiff_t index = -1)
      : std::runtime_error(what), index(index) {}
  std::ptrdiff_t index;
};

}  // namespace prt
