#pragma once

#include <stdexcept>
#include <string>

namespace lsys {

enum class ErrorCode {
  input,          // malformed arguments (duplicate points, empty grid, ...)
  domain,         // argument outside the domain of the operation
  evaluation,     // an evaluator failed at a sample point
  integration,    // ODE step-size underflow
  convergence,    // iteration did not converge
  pole,           // genuine pole of an impedance/transfer function
  class_error,    // function or system is not in the required class
  not_accretive,  // T_h is not accretive
  no_limit,       // boundary limit does not exist numerically
  accuracy,       // quadrature/extrapolation could not reach the tolerance
  io,             // file could not be read or parsed
  internal        // internal consistency check failed
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace lsys
