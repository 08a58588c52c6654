#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asmidx {

// Raised when a caller breaks a documented precondition (mismatched mask
// widths, occurrences outside any fragment, cyclic input to a tree routine).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised by the file readers. `line()` is 1-based; 0 means "whole input".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, std::size_t line)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": "
                                           + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace asmidx
