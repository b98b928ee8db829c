#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pqs {

enum class ErrorCode {
  invalid_arg = 1,
  dimension = 2,
  resource = 3,
  parse = 4,
  io = 5,
  numeric = 6,
  unknown_name = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

struct Options {
  double tol = 1e-10;
  std::uint64_t seed = 0;
  long max_dim = 16384;
};

inline void guard_dim(long dim, long max_dim) {
  if (dim > max_dim)
    fail(ErrorCode::resource,
         "dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(max_dim));
}

}  // namespace pqs
