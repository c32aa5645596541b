#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

enum class ErrorCode : int {
  ok = 0,
  parse = 1,
  consistency = 2,
  precondition = 3,
  size_cap = 4,
  not_applicable = 5,
  ledger = 6,
  assertion = 7,
  internal = 8,
  io = 9,
  invalid_argument = 10,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so the C API can map it
// without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace mlab
