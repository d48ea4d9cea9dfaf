#pragma once

#include <stdexcept>
#include <string>

namespace acikit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands belong to different rings") {}
  explicit RingMismatch(const std::string& what) : Error(what) {}
};

class NotHomogeneous : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("zero polynomial has no degree") {}
  explicit ZeroPolynomial(const std::string& what) : Error(what) {}
};

/// Raised when a computation would exceed its degree or step cap.
class Overflow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A column could not be lifted through a differential.
class LiftFailed : public Error {
 public:
  using Error::Error;
};

/// The number of generators is not grade + 1.
class GradeMismatch : public Error {
 public:
  using Error::Error;
};

/// A formula was applied outside its hypotheses.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace acikit
