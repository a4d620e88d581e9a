#pragma once

#include <stdexcept>

namespace nmd {

/// A density matrix or coefficient triple that is not a physical state.
class StateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative entropy with a support violation (the value is +infinity).
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Channel parameters outside the completely positive range.
class ChannelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical integrator asked to run with a step that cannot meet its accuracy contract.
class AccuracyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nmd
