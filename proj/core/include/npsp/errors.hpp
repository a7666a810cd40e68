#pragma once

#include <stdexcept>
#include <string>

namespace npsp {

// Mismatched vector lengths between operands.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally invalid argument (bad party count, malformed share set, ...).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Unsatisfiable configuration, e.g. commodity-server exhaustion.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace npsp
