#ifndef TNC_ERRORS_HPP
#define TNC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tnc {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition or malformed argument.
class ArgumentError : public Error {
public:
  explicit ArgumentError(const std::string& what) : Error(what) {}
};

// Scenario file / override syntax problems. Carries enough context to name
// the offending section or key.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Quadrature non-convergence, overflow, all-infinite kernels and the like.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

// Inverse solvers that hit their search cap without reaching the target.
class UnreachableError : public Error {
public:
  explicit UnreachableError(const std::string& what) : Error(what) {}
};

// Minimization over a domain where the objective is nowhere finite.
class InfeasibleError : public NumericError {
public:
  explicit InfeasibleError(const std::string& what) : NumericError(what) {}
};

}  // namespace tnc

#endif  // TNC_ERRORS_HPP
