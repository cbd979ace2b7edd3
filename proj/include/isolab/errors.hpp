#pragma once

#include <stdexcept>
#include <string>

namespace isolab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A theorem hypothesis or operation precondition does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// Numeric failure: quadrature non-convergence, branch ambiguity, root collision.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace isolab
