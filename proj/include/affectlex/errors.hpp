#pragma once

#include <stdexcept>
#include <string>

namespace affectlex {

// Error taxonomy mirrored by the CLI exit codes:
//   0 success, 2 configuration error, 3 data error, 4 numerical failure.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  static constexpr int kExitCode = 2;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  static constexpr int kExitCode = 3;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  static constexpr int kExitCode = 4;
};

}  // namespace affectlex
