#pragma once

#include <stdexcept>
#include <string>

namespace cptp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Eigensolver or linear-system breakdown.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class InvalidEnsemble : public Error {
 public:
  using Error::Error;
};

class NotTracePreserving : public Error {
 public:
  using Error::Error;
};

class InvalidCertificate : public Error {
 public:
  using Error::Error;
};

/// Shift angle outside [0, pi].
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; the message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cptp
