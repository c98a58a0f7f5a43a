#pragma once

#include <stdexcept>
#include <string>

namespace fuzzygb {

// Base of every error raised by the library. Each subclass maps onto one
// failure category; the CLI turns them into exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatch or a matrix of the wrong structural shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of the operation (e.g. N < 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Iterative eigensolver failed to converge.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, long iterations)
      : Error(what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

// Input expected to be hermitian is not, within tolerance.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// Matrix expected to be positive semidefinite has a negative eigenvalue
// beyond tolerance.
class DefinitenessError : public Error {
 public:
  using Error::Error;
};

// Matrix that has to be inverted is singular or too badly conditioned.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// Some w_k^2 came out negative: the (f^2, hbar, N) triple has no
// representation with real weights.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// Partial sums of Q_k do not return to zero at k = N.
class ClosureError : public Error {
 public:
  using Error::Error;
};

// A constructed object fails a defining relation it must satisfy.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A result that is structurally guaranteed (e.g. diagonality) is violated.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzzygb
