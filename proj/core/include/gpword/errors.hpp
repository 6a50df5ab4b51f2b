#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpword {

/// Raised when caller-supplied data is malformed or out of range.
/// The command line tool maps this family to exit code 2; anything else
/// escaping a public entry point is an internal invariant violation.
class invalid_input : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error carrying a byte offset into the offending source text.
class parse_error : public invalid_input {
 public:
  parse_error(const std::string& message, std::size_t position)
      : invalid_input(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace gpword
