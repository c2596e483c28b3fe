#pragma once

#include <stdexcept>
#include <string>

namespace scorelint {

enum class ErrorKind {
  InvalidArgument,
  Io,
  Container,
  Parse,
  UnsupportedDocument,
  IllFormedDocument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Failure that aborts processing of a whole document. Findings about the
/// score content are reported as Diagnostic values instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scorelint
