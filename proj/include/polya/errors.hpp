#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polya {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or a hypothesis of a check.
/// The CLI maps these to exit status 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ConstantTermZero : public PreconditionError {
 public:
  ConstantTermZero() : PreconditionError("polynomial has zero constant term") {}
};

class DegreeZero : public PreconditionError {
 public:
  DegreeZero() : PreconditionError("polynomial has degree < 1; no zeros to find") {}
};

class RootAtOrigin : public PreconditionError {
 public:
  RootAtOrigin() : PreconditionError("root set contains a zero at the origin") {}
};

class NormalizationError : public PreconditionError {
 public:
  NormalizationError() : PreconditionError("polynomial must satisfy p(0) = 1") {}
};

class RootsOutsideSector : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class Overflow : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NonRealCoefficients : public PreconditionError {
 public:
  NonRealCoefficients() : PreconditionError("series or polynomial has non-real coefficients") {}
};

class NotFound : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class UnknownGenerator : public PreconditionError {
 public:
  explicit UnknownGenerator(const std::string& id)
      : PreconditionError("unknown sequence generator: " + id) {}
};

/// Malformed input file. `where` locates the problem (byte offset or JSON path).
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& what, std::string where)
      : PreconditionError(what + " (at " + where + ")"), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A sequence member fails a hypothesis of the theorem being checked.
class HypothesisViolated : public PreconditionError {
 public:
  HypothesisViolated(std::string hypothesis, std::string witness)
      : PreconditionError("hypothesis '" + hypothesis + "' violated: " + witness),
        hypothesis_(std::move(hypothesis)),
        witness_(std::move(witness)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string hypothesis_;
  std::string witness_;
};

/// Root iteration did not reach the requested tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace polya
