#pragma once

#include <stdexcept>
#include <string>

#include "pregroup/word.hpp"

namespace pregroup {

struct ParseError : std::runtime_error {
  size_t position;  // byte offset into the input
  ParseError(const std::string& message, size_t position)
      : std::runtime_error(message), position(position) {}
};

// Grammar of the surface syntax:
//   word   := "1" | term (SP+ term)*
//   term   := base suffix*
//   base   := ATOM | "pi" "(" word ")"
//   suffix := "^r" | "^l" | "^rr" | "^ll" | "^(" INT ")"
// Suffix degrees accumulate by summation.  "pi" is reserved and cannot be
// an atom; "pi(1)" is rejected because decorated contents are non-empty.
Word parse_word(const std::string& text);

}  // namespace pregroup
