#pragma once

#include <stdexcept>
#include <string>

namespace lhsnul {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad conic, unsupported lattice, bad recurrence, parse errors.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The data is well formed but the mathematics does not go through.
class MathError : public Error {
 public:
  using Error::Error;
};

class InvalidConic : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedLatticeClass : public InputError {
 public:
  using InputError::InputError;
};

/// A square root needed for the series expansion of sqrt(r) is not in Q(sqrt d).
class FieldTooSmall : public InputError {
 public:
  using InputError::InputError;
};

class InvalidRecurrence : public InputError {
 public:
  using InputError::InputError;
};

class DivisionNotExact : public MathError {
 public:
  using MathError::MathError;
};

/// Carries the level at which a Hankel determinant vanished.
class NotQuasiDefinite : public MathError {
 public:
  NotQuasiDefinite(int n, const std::string& what) : MathError(what), n_(n) {}
  int level() const noexcept { return n_; }

 private:
  int n_;
};

/// The truncation order is too small for the requested check.
class InsufficientTruncation : public MathError {
 public:
  InsufficientTruncation(int required, const std::string& what)
      : MathError(what), required_(required) {}
  int required() const noexcept { return required_; }

 private:
  int required_;
};

/// Coefficient matching failed at the given power of x.
class Inconsistent : public MathError {
 public:
  Inconsistent(int power, const std::string& what) : MathError(what), power_(power) {}
  int power() const noexcept { return power_; }

 private:
  int power_;
};

/// Moment u_k is not pinned down by the Riccati equation.
class FreeParameter : public MathError {
 public:
  FreeParameter(int index, const std::string& what) : MathError(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class NotLaguerreHahn : public MathError {
 public:
  NotLaguerreHahn(int n, const std::string& what) : MathError(what), n_(n) {}
  int level() const noexcept { return n_; }

 private:
  int n_;
};

class DegreeBoundExceeded : public MathError {
 public:
  DegreeBoundExceeded(int n, const std::string& what) : MathError(what), n_(n) {}
  int level() const noexcept { return n_; }

 private:
  int n_;
};

class Underdetermined : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace lhsnul
