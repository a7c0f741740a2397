#pragma once
#include <stdexcept>
#include <string>

namespace hcg {

enum class Code {
  ok = 0,
  validation,
  precision,
  domain,
  dimension,
  rank,
  unsupported,
  io,
  mismatch,
  undecided,
};

const char* code_name(Code c);

struct Error : std::runtime_error {
  Code code;
  Error(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Code c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, Code c, const std::string& msg) {
  if (!ok) throw Error(c, msg);
}

}  // namespace hcg
