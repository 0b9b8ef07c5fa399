#pragma once

#include <stdexcept>
#include <string>

namespace dsg {

/// Failure categories. Each maps to a distinct process exit code in dsgtool.
enum class ErrorKind {
  kParse = 2,
  kPrecondition = 3,
  kIo = 4,
  kEmptyTrace = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::kPrecondition, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

class EmptyTraceError : public Error {
 public:
  explicit EmptyTraceError(const std::string& what)
      : Error(ErrorKind::kEmptyTrace, what) {}
};

// ParseError lives in trace.hpp since it carries line diagnostics.

const char* to_string(ErrorKind kind);

}  // namespace dsg
