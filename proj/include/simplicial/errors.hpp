#pragma once

#include <stdexcept>
#include <string>

namespace simplicial {

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independent computations that must agree did not (tolerance or logic bug).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace simplicial
