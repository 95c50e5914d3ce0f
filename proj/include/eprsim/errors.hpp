#pragma once

#include <stdexcept>

namespace eprsim {

/// A state failed a physical precondition (non-unit Bloch vector, zero spinor).
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two bases that should belong to the same particle system do not.
class BasisMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation hit a zero-weight branch (fully absorbed state, zero-probability outcome).
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough recorded events to form an estimate.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eprsim
