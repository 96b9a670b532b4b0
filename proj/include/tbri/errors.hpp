#pragma once

#include <stdexcept>
#include <string>

namespace tbri {

/// Bad parameters / inputs that violate a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A computation that could not be carried out (overflow, non-convergence,
/// dimension over cap, I/O failure).
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tbri
