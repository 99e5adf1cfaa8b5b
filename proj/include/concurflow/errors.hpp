#pragma once

#include <stdexcept>
#include <string>

namespace concurflow {

// Malformed input: bad ids, broken paths, out-of-range parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The exact LP reference could not certify an optimum.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solver hit a state it should never reach (iteration cap, NaN, ...).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace concurflow
