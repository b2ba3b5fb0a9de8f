#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topspin {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. `position` is the 0-based byte offset where
/// the parser gave up.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t position)
      : ParseError("unknown identifier '" + name + "'", position), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Argument outside the domain of an operation (e.g. s >= 1, |u| >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Expression evaluation failed (sqrt of a negative, division by zero).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// No real spin places an equilibrium at the requested u.
class NoRealSpin : public Error {
 public:
  using Error::Error;
};

/// Too few branch samples, or the scenario has no branch to fit.
class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Perturbation probe landed between the bounded and escape thresholds.
class InconclusiveProbe : public Error {
 public:
  InconclusiveProbe(const std::string& what, double max_deviation)
      : Error(what), max_deviation_(max_deviation) {}
  double max_deviation() const noexcept { return max_deviation_; }

 private:
  double max_deviation_;
};

class IntegrationError : public Error {
 public:
  enum class Kind { StepUnderflow, MaxSteps, BoundaryEscape };

  IntegrationError(Kind kind, double time, const std::string& what)
      : Error(what), kind_(kind), time_(time) {}
  Kind kind() const noexcept { return kind_; }
  /// Simulation time at which integration stopped.
  double time() const noexcept { return time_; }

 private:
  Kind kind_;
  double time_;
};

/// Bad or incomplete run configuration. `line` is 0 when not tied to a line.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace topspin
