#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace llpmatch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in an instance file. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates an instance invariant (incomplete or
/// duplicate preference lists, ids out of range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The constraint relation, together with the per-man proposal chains,
/// contains a cycle.
class CyclicConstraints : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A constraint form that has no meaning for the given profile or solver
/// (e.g. a forbidden pair on a profile with ties).
class TiesUnsupportedForConstraint : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Prerequisite lists of a job-scheduling instance are not a DAG.
class CyclicPrerequisites : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An LLP problem broke the engine contract (advance did not make progress).
class MalformedProblem : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration requested above its size guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A stability class has members but no componentwise minimum among them.
class LatticeViolation : public Error {
 public:
  using Error::Error;
};

/// The simulator ran out of deliverable messages before termination was
/// detected, or an internal protocol invariant failed.
class SimulatorStuck : public Error {
 public:
  using Error::Error;
};

}  // namespace llpmatch
