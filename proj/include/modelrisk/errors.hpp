#pragma once

#include <stdexcept>
#include <string>

namespace mrisk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its mathematical domain (u outside (0,1), ε <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mean/stdev requirements violated (zero or infinite variance, law not standardized).
class MomentError : public Error {
 public:
  using Error::Error;
};

class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

/// Extremal quantiles requested from an envelope that has a flat stretch.
class NonInvertibleEnvelope : public Error {
 public:
  using Error::Error;
};

class AlphaOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonPositiveReference : public Error {
 public:
  using Error::Error;
};

class DegenerateRange : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class RadiusTooLarge : public Error {
 public:
  using Error::Error;
};

class RootBracketError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InfeasibleConstraints : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// CSV/JSON input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mrisk
