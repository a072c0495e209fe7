#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixar {

/// Failure categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  Order,       // empty or malformed coefficient vector
  Degenerate,  // leading coefficient below the magnitude floor, zero variance
  Partition,   // root split incompatible with the requested (r, s)
  Boundary,    // root on the unit circle
  Length,      // series too short for the operation
  Data,        // non-finite or unparsable input values
  Domain,      // evaluation outside the function's domain
  Parameter,   // invalid distribution or option parameter
  Quadrature,  // adaptive integration failed to reach tolerance
  Estimation,  // no usable candidate fit
  Io,          // file access
  Usage,       // bad command-line usage
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Exit code used by the CLI for a given error kind (always >= 2).
int exit_code(ErrorKind kind);

}  // namespace mixar
