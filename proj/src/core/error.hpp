#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace relpub {

/// Broad failure classes. The numeric values double as CLI exit codes and
/// as the status values of the C API.
enum class ErrorClass {
  validation = 1,  // bad input content, failed findings
  io = 2,          // filesystem, missing files, unusable configuration
  remote = 3,      // network transport, authentication, remote rejection
  conflict = 4,    // remote state disagrees with the requested change
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string kind, const std::string& message)
      : std::runtime_error(message), cls_(cls), kind_(std::move(kind)) {}

  ErrorClass error_class() const { return cls_; }
  const std::string& kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
  std::string kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg, int line = 0)
      : Error(ErrorClass::validation, "ParseError",
              line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_number(line) {}
  int line_number;
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& msg) : Error(ErrorClass::validation, "SchemaError", msg) {}
};

struct IdentifierError : Error {
  explicit IdentifierError(const std::string& msg)
      : Error(ErrorClass::validation, "IdentifierError", msg) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg)
      : Error(ErrorClass::validation, "PreconditionError", msg) {}
};

struct ValidationFailedError : Error {
  explicit ValidationFailedError(const std::string& msg)
      : Error(ErrorClass::validation, "ValidationFailed", msg) {}
};

struct DuplicateRoleError : Error {
  explicit DuplicateRoleError(const std::string& msg)
      : Error(ErrorClass::validation, "DuplicateRoleError", msg) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(ErrorClass::io, "UsageError", msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorClass::io, "IoError", msg) {}
};

struct MissingAssetError : Error {
  explicit MissingAssetError(const std::string& msg)
      : Error(ErrorClass::io, "MissingAssetError", msg) {}
};

struct MissingSourceError : Error {
  explicit MissingSourceError(const std::string& msg)
      : Error(ErrorClass::io, "MissingSourceError", msg) {}
};

struct DestinationNotEmptyError : Error {
  explicit DestinationNotEmptyError(const std::string& msg)
      : Error(ErrorClass::io, "DestinationNotEmpty", msg) {}
};

struct AuthError : Error {
  explicit AuthError(const std::string& msg) : Error(ErrorClass::remote, "AuthError", msg) {}
};

struct TransportError : Error {
  explicit TransportError(const std::string& msg, int attempts = 1)
      : Error(ErrorClass::remote, "TransportError", msg), attempts_made(attempts) {}
  int attempts_made;
};

struct TagNotFoundError : Error {
  explicit TagNotFoundError(const std::string& msg)
      : Error(ErrorClass::remote, "TagNotFound", msg) {}
};

struct DigestMismatchError : Error {
  explicit DigestMismatchError(const std::string& msg)
      : Error(ErrorClass::remote, "DigestMismatch", msg) {}
};

struct ValidationRejectedError : Error {
  explicit ValidationRejectedError(const std::string& msg)
      : Error(ErrorClass::remote, "ValidationRejected", msg) {}
};

struct ConflictError : Error {
  explicit ConflictError(const std::string& msg) : Error(ErrorClass::conflict, "ConflictError", msg) {}
};

struct StateError : Error {
  explicit StateError(const std::string& msg) : Error(ErrorClass::conflict, "StateError", msg) {}
};

}  // namespace relpub
