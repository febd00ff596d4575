#pragma once

#include <stdexcept>
#include <string>

namespace ymb {

/// Thrown when an argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a requested quantity is infinite (e.g. an infrared-divergent propagator).
class DivergenceError : public std::domain_error {
 public:
  explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ymb
