#pragma once

#include <stdexcept>
#include <string>

namespace fdyn {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (t = 0, derivative at a pole).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exact algebra refused because the result would exceed the size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Point did not escape within the iteration budget.
class NotInBasin : public Error {
 public:
  using Error::Error;
};

// Parameter classification disagrees with the requested stratum.
class WrongStratum : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

class RootFindingStalled : public Error {
 public:
  using Error::Error;
};

}  // namespace fdyn
