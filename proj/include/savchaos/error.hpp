#pragma once

#include <stdexcept>
#include <string>

namespace savchaos {

enum class ErrorCode {
  domain,                 // argument outside the map's domain
  parameter,              // invalid model parameter
  empty_request,          // zero-length request
  singular_rate,          // formula divides by a zero rate
  degenerate_process,     // both deposits are zero
  precision_unreachable,  // truncation would exceed the configured cap
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace savchaos
