#pragma once

#include <stdexcept>
#include <string>

namespace hsc {

// Failure categories. The CLI maps `input` kinds to exit status 3 and
// `invariant` to exit status 2.
enum class ErrorKind {
  domain,              // argument outside an operation's precondition
  singular,            // degenerate germ or matrix
  precision,           // finite-difference stencil dominated by round-off
  not_diffeomorphism,  // monotonicity witness <= 0
  refinement,          // bracket failure; grid too coarse
  constraint,          // user-supplied data violates a required identity
  window,              // window too small for the integrand's tail
  stiffness,           // ODE step underflow
  step,                // CFL / time-step bound violated
  construction,        // malformed construction parameters
  invariant,           // internal invariant failed: indicates a bug
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string invariant = {})
      : std::runtime_error(message), kind_(kind), invariant_(std::move(invariant)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Name of the violated invariant, empty for plain domain errors.
  const std::string& invariant() const noexcept { return invariant_; }
  bool is_invariant_failure() const noexcept { return kind_ == ErrorKind::invariant; }

 private:
  ErrorKind kind_;
  std::string invariant_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

[[noreturn]] inline void fail_invariant(const std::string& name, const std::string& message) {
  throw Error(ErrorKind::invariant, message, name);
}

}  // namespace hsc
