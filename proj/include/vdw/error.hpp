#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

enum class ErrorCode {
  invalid_argument = 1,
  grid_mismatch,
  non_convergence,
  depth_exceeded,
  no_solution,
  insufficient_sampling,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::invalid_argument, what);
}

inline void require(bool cond, const std::string& what, ErrorCode code) {
  if (!cond) fail(code, what);
}

}  // namespace vdw
