#pragma once

#include <stdexcept>
#include <string>

namespace sasoca {

// Bad user-supplied configuration or arguments (CLI maps this to exit 1).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent data files, e.g. genome files (exit 2).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures (exit 3).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// majority() on a configuration with exactly half ones.
class TieError : public std::runtime_error {
 public:
  explicit TieError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sasoca
