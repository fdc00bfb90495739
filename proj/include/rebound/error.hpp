#pragma once

#include <stdexcept>
#include <string>

namespace rebound {

enum class ErrorCode {
  ParameterDomain,
  IndexOutOfRange,
  Infeasible,
  RankDeficient,
  DegenerateRatio,
  DegenerateData,
  SearchCapExceeded,
  HorizonTooShort,
  InvalidInput,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; the code is what the CLI
// reports in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace rebound
