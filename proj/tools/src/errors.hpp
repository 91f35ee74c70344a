#pragma once

#include <stdexcept>
#include <string>

namespace hsc::cli {

// Exit statuses of the command-line contract.
enum ExitCode : int {
  kOk = 0,
  kInvariant = 2,  // invariant or scenario validation failure
  kDomain = 3,     // input outside an operation's domain
  kUsage = 64,
  kMalformed = 65,
  kIo = 74,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario field missing, mistyped or outside its documented range.
struct ValidationError : std::runtime_error {
  ValidationError(const std::string& field, const std::string& message)
      : std::runtime_error(message), field(field) {}
  std::string field;
};

}  // namespace hsc::cli
