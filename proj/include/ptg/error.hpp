#pragma once

#include <stdexcept>
#include <string>

namespace ptg {

enum class ErrorKind {
  InvalidArgument,
  Io,
  Parse,
  NonConformingMesh,
  DegenerateTriangle,
  InadmissibleMesh,
  SingularSystem,
  NotConverged,
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure in the text mesh format; `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ptg
