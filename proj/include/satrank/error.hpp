#pragma once

#include <stdexcept>
#include <string>

namespace satrank {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration or command-line usage. CLI exit code 2.
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent input data. CLI exit code 3.
struct DataError : Error {
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// Non-finite values or numeric breakdown. CLI exit code 4.
struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Tensor shape contract violation; a bug in the caller, not in the data.
struct ShapeError : Error {
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

}  // namespace satrank
