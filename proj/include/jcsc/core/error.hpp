#pragma once

#include <stdexcept>
#include <string>

namespace jcsc {

// Malformed input: unreadable file, bad syntax, unknown key. CLI exit code 1.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed value that breaks a model invariant (e.g. spreading length
// not dividing the grid, target beyond unambiguous range). CLI exit code 2.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jcsc
