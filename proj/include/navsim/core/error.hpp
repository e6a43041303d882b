#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nav {

enum class ErrorCode {
  InvalidInput,
  NotPositiveDefinite,
  NoConvergence,
  SingularObservation,
  NumericalFailure,
  DegenerateBelief,
  OutOfBounds,
  NoPath,
  LocalMinimum,
  SingularGeometry,
  UnknownDemo,
  IoError,
  EmptyTrace,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code distinguishes them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 protected:
  struct Preformatted {};
  Error(ErrorCode code, const std::string& full, Preformatted) : std::runtime_error(full), code_(code) {}

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidInput, what);
}

}  // namespace nav
