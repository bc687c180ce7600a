#pragma once

#include <stdexcept>
#include <string>

namespace parkforge {

enum class ErrorKind {
  validation,  // bad input values or shapes
  config,      // configuration document problems
  format,      // undecodable or unsupported file contents
  io,          // filesystem failures
  invariant,   // internal consistency check tripped
};

/// Base exception for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Process exit code used by the CLI: 2 validation/config, 3 I/O, 4 internal.
  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::io:
        return 3;
      case ErrorKind::invariant:
        return 4;
      default:
        return 2;
    }
  }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::config, w) {}
};
struct FormatError : Error {
  explicit FormatError(const std::string& w) : Error(ErrorKind::format, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};
struct InvariantError : Error {
  explicit InvariantError(const std::string& w) : Error(ErrorKind::invariant, w) {}
};

}  // namespace parkforge
