#pragma once

#include <stdexcept>
#include <string>

namespace inexact {

/// Bad argument: wrong length, negative energy, unknown kind, metric/problem mismatch.
class invalid_input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed an enumeration guard (2^n rows, group order, ...).
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative search hit its iteration cap.
class non_convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace inexact
