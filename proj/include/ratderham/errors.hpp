#pragma once

#include <stdexcept>
#include <string>

namespace ratderham {

// Base class for all library errors. `kind()` is a stable machine-readable
// tag; the what() string carries the human-readable details.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Malformed input: bad syntax, dimension mismatches in raw data, bad flags.
class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error("input", message) {}
};

// Syntax error in polynomial (or similar) text, with a 0-based position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Domain errors: the input is well-formed but violates a mathematical
// precondition (singular hypersurface, degree mismatch, ...).
class DomainError : public Error {
 public:
  DomainError(std::string kind, const std::string& message)
      : Error(std::move(kind), message) {}
};

class SingularHypersurface : public DomainError {
 public:
  SingularHypersurface(const std::string& message, long failing_degree)
      : DomainError("singular_hypersurface", message),
        failing_degree_(failing_degree) {}
  long failing_degree() const { return failing_degree_; }

 private:
  long failing_degree_;
};

class DegreeMismatch : public DomainError {
 public:
  DegreeMismatch(const std::string& message, long expected, long got)
      : DomainError("degree_mismatch", message), expected_(expected), got_(got) {}
  long expected() const { return expected_; }
  long got() const { return got_; }

 private:
  long expected_;
  long got_;
};

}  // namespace ratderham
