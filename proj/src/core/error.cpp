#include "core/error.hpp"

namespace hcg {

const char* code_name(Code c) {
  switch (c) {
    case Code::ok: return "ok";
    case Code::validation: return "validation";
    case Code::precision: return "precision";
    case Code::domain: return "domain";
    case Code::dimension: return "dimension";
    case Code::rank: return "rank";
    case Code::unsupported: return "unsupported";
    case Code::io: return "io";
    case Code::mismatch: return "mismatch";
    case Code::undecided: return "undecided";
  }
  return "unknown";
}

}  // namespace hcg
