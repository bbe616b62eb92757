#pragma once

#include <stdexcept>
#include <string>

namespace drsplit {

// Caller broke a precondition (dimension mismatch, trace too short, ...).
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input vectors are (numerically) linearly dependent.
struct DegenerateBasisError : std::runtime_error {
  explicit DegenerateBasisError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation not defined for this input (non-affine exact gap, 3-D plot, ...).
struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problem file failed structural or semantic validation.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Brute-force grid never saw a member of the set.
struct OracleMissError : std::runtime_error {
  explicit OracleMissError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failure.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace drsplit
