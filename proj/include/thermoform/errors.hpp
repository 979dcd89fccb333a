#pragma once

#include <stdexcept>
#include <string>

namespace thermoform {

// Malformed arguments or domain violations (bad alphabet, non-invertible
// generator, mismatched dimensions). CLI maps this family to exit code 2.
class InvalidInputError : public std::runtime_error {
 public:
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or table would exceed its configured budget or cap.
// CLI maps this family to exit code 3.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative routine failed to reach its required residual; carries the
// residual actually achieved so callers can report it.
class NumericalFailureError : public std::runtime_error {
 public:
  NumericalFailureError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A routine was called on input that fails its stated precondition
// (e.g. leading-space extraction on a map that is not proximal).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Text-format errors; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace thermoform
