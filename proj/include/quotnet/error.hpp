#pragma once

#include <stdexcept>
#include <string>

namespace quotnet {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller input violates an operation's contract (shape, finiteness, range).
struct InvalidInputError : Error {
  using Error::Error;
};

// Numerical failure: solver breakdown, unattainable calibration target, ...
struct NumericalError : Error {
  using Error::Error;
};

// An operation required the rank-r stratum and the argument left it.
struct RankDeficiencyError : NumericalError {
  using NumericalError::NumericalError;
};

// File parse or write failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace quotnet
