#ifndef GNOWEE_ERRORS_HPP
#define GNOWEE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gnowee {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values (bounds, fractions, settings).
class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Root finder / iterative scheme did not converge.
class ConvergenceError : public Error {
public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Objective or constraint evaluation failed.
class EvaluationError : public Error {
public:
  explicit EvaluationError(const std::string& msg) : Error(msg) {}
};

// Text input (TSPLIB, CSV, JSON) could not be parsed.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Config file / CLI usage problems.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Registered but intentionally unimplemented entry points.
class NotImplementedError : public Error {
public:
  explicit NotImplementedError(const std::string& msg) : Error(msg) {}
};

// Invariant breach inside the library itself.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace gnowee

#endif  // GNOWEE_ERRORS_HPP
