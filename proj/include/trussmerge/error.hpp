#pragma once

#include <stdexcept>
#include <string>

namespace trussmerge {

enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kIo = 3,
  kDomain = 4,
  kGuard = 5,
  kInternal = 6,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code that
/// survives the trip through the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::kDomain, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

inline void require_k(int k) {
  if (k < 3) throw DomainError("k must be at least 3, got " + std::to_string(k));
}

}  // namespace trussmerge
