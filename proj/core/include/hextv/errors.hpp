#pragma once

#include <stdexcept>
#include <string>

namespace hextv {

// Malformed or unreadable files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A solver invariant failed at run time (iteration cap, non-monotone levels).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hextv
