#pragma once

#include <stdexcept>
#include <string>

namespace goelab {

enum class ErrorCode {
  descriptor_mismatch,
  unsupported_operation,
  domain,
  budget,
  alphabet_mismatch,
  out_of_range,
  validation,
  parse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::descriptor_mismatch: return "descriptor-mismatch";
    case ErrorCode::unsupported_operation: return "unsupported-operation";
    case ErrorCode::domain: return "domain";
    case ErrorCode::budget: return "budget";
    case ErrorCode::alphabet_mismatch: return "alphabet-mismatch";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::validation: return "validation";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace goelab
