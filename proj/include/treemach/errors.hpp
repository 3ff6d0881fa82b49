#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treemach {

// Raised by all text-format parsers. `position` is a 0-based byte offset
// into the parsed input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Raised when a guard/action rule fails validation or when a disjoint
// union is built from overlapping guards.
class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treemach
