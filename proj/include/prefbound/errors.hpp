#pragma once

#include <stdexcept>
#include <string>

namespace prefbound {

/// Raised when inputs violate an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a brute-force routine would exceed its configured work cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the 1-D oracle when alternative locations are not in generic position.
class DegeneracyError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace prefbound
