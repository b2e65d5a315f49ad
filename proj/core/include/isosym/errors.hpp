#pragma once

#include <stdexcept>
#include <string>

namespace isosym {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// Bracket order outside the exactly-representable binomial range.
class OrderTooLarge : public Error {
 public:
  using Error::Error;
};

class NotDoublyCommuting : public Error {
 public:
  using Error::Error;
};

/// Checked 64-bit coefficient arithmetic overflowed.
class Overflow : public Error {
 public:
  using Error::Error;
};

class SingularWeight : public Error {
 public:
  using Error::Error;
};

class InvalidWeight : public Error {
 public:
  using Error::Error;
};

class BadOrder : public Error {
 public:
  using Error::Error;
};

class UnknownFixture : public Error {
 public:
  using Error::Error;
};

}  // namespace isosym
