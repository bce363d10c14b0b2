#pragma once

#include <stdexcept>
#include <string>

namespace muontomo {

/// Bad input: configuration fields, indices, plans. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Index outside the pixel grid.
class BoundsError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Unreadable config or unwritable output. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace muontomo
