#pragma once

#include <stdexcept>
#include <string>

namespace cilab {

/// Category used by the C API and the CLI to map failures onto status and exit codes.
enum class ErrorKind {
  Usage,
  Domain,
  Numeric,
  UnsupportedPoint,
  SingularSystem,
  Endpoint,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

/// A point lies outside the open domain an operation requires (|a| >= 1, Re s not in (0,1), ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// An iterative solver stopped without meeting its tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double best_value, double residual)
      : Error(ErrorKind::Numeric, what), best_value_(best_value), residual_(residual) {}
  explicit NumericError(const std::string& what) : NumericError(what, 0.0, 0.0) {}

  double best_value() const noexcept { return best_value_; }
  double residual() const noexcept { return residual_; }

 private:
  double best_value_;
  double residual_;
};

class UnsupportedPointError : public Error {
 public:
  explicit UnsupportedPointError(const std::string& what)
      : Error(ErrorKind::UnsupportedPoint, what) {}
};

class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what) : Error(ErrorKind::SingularSystem, what) {}
};

/// Interpolation parameter hit an endpoint of [0,1] where no derivation exists.
class EndpointError : public Error {
 public:
  explicit EndpointError(const std::string& what) : Error(ErrorKind::Endpoint, what) {}
};

/// Schema or syntax violation in a configuration document; `where` names the line or field.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(ErrorKind::Parse, where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace cilab
