#pragma once

#include <stdexcept>
#include <string>

namespace ehf {

// Base of every numerical failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument sits on (or within the proximity threshold of) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

// A factor that must be divided by, or a logarithm argument, vanishes.
class ZeroError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of the operation, or violating
// a parameter constraint (balancing, parity, locus).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Quadrature or summation budget exhausted with the error above tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// A pole of the integrand lies on or too close to the integration contour,
// or no straight contour separates the pole sequences.
class PolePinch : public Error {
 public:
  using Error::Error;
};

// Result magnitude is outside the range of double precision.
class OverflowGuard : public Error {
 public:
  using Error::Error;
};

}  // namespace ehf
