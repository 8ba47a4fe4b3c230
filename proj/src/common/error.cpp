#include "common/error.hpp"

namespace chb {

const char* to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidArgument: return "invalid argument";
  case ErrorCode::Config: return "config error";
  case ErrorCode::Coefficient: return "coefficient error";
  case ErrorCode::Setup: return "setup error";
  case ErrorCode::Solver: return "solver failure";
  case ErrorCode::Picard: return "picard failure";
  case ErrorCode::Io: return "i/o error";
  case ErrorCode::Size: return "size error";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

} // namespace chb
