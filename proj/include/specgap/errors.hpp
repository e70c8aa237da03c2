#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

// Invalid model parameters (bad interval, D <= 1 for the cone model, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller-side precondition was not met (e.g. a sublevel set that is not an
// interval where one is required).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An iterative method failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specgap
