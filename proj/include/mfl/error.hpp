#pragma once

#include <stdexcept>
#include <string>

namespace mfl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument, violated precondition or malformed input.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A sector table or enumeration would exceed its configured size budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfl
