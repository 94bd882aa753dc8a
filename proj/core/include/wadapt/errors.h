#pragma once

#include <stdexcept>
#include <string>

namespace wadapt {

/// Invalid arguments to a generator, solver or configuration.
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string &what) : std::invalid_argument(what) {}
};

/// Operand sizes disagree (state vs. diagonal, parameter vector vs. layers).
class DimensionError : public std::invalid_argument {
public:
  explicit DimensionError(const std::string &what) : std::invalid_argument(what) {}
};

/// Malformed or invariant-violating input file.
class FormatError : public std::runtime_error {
public:
  explicit FormatError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace wadapt
