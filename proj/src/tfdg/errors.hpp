#pragma once

#include <stdexcept>
#include <string>

namespace tfdg {

enum class ErrorCode {
  ok = 0,
  invalid_argument,
  domain,
  singular,
  solver_failure,
  io_failure,
  bad_data,
  not_found,
  internal
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace tfdg
