#pragma once

#include <stdexcept>
#include <string>

namespace commfind {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed an argument outside an operation's domain
/// (out-of-range node id, empty set where one is required, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A parameter set is inconsistent, or a derived quantity such as a
/// sampling probability falls outside its valid range.
class InvalidParamsError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// The generator could not realize the requested constraints within its
/// resampling allowance.
class GenerationInfeasibleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace commfind
