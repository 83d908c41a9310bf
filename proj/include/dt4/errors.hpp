#ifndef DT4_ERRORS_HPP
#define DT4_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dt4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A class handed to the Euler class has nonzero multiplicity on the zero weight.
class ZeroFormError : public Error {
 public:
  using Error::Error;
};

/// A vertex with insertion carries torus-fixed terms.
class FixedTermError : public Error {
 public:
  using Error::Error;
};

/// A sample point makes a denominator vanish modulo the prime.
class DegeneratePointError : public Error {
 public:
  using Error::Error;
};

class NonUnitConstantTerm : public Error {
 public:
  using Error::Error;
};

class NegativeExponentError : public Error {
 public:
  using Error::Error;
};

/// Box set that is not downward closed, or malformed box text.
class InvalidPartition : public Error {
 public:
  using Error::Error;
};

/// Bad geometry, task or flag values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dt4

#endif  // DT4_ERRORS_HPP
