#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chb {

enum class ErrorCode {
  InvalidArgument = 1,
  Config = 2,
  Coefficient = 3,
  Setup = 4,
  Solver = 5,
  Picard = 6,
  Io = 7,
  Size = 8,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Thrown when a Krylov solve does not reach its tolerance. Keeps the residual history.
class SolverFailure : public Error {
public:
  SolverFailure(const std::string& what, std::vector<double> history)
      : Error(ErrorCode::Solver, what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

private:
  std::vector<double> history_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) fail(code, message);
}

} // namespace chb
