#include "scorelint/error.hpp"

namespace scorelint {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::Container: return "container-error";
    case ErrorKind::Parse: return "parse-failure";
    case ErrorKind::UnsupportedDocument: return "unsupported-document";
    case ErrorKind::IllFormedDocument: return "ill-formed-document";
  }
  return "unknown";
}

}  // namespace scorelint
