#include "savchaos/error.hpp"

namespace savchaos {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain error";
    case ErrorCode::parameter: return "parameter error";
    case ErrorCode::empty_request: return "empty request";
    case ErrorCode::singular_rate: return "singular rate";
    case ErrorCode::degenerate_process: return "degenerate process";
    case ErrorCode::precision_unreachable: return "precision unreachable";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace savchaos
