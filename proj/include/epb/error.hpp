#pragma once

#include <stdexcept>
#include <string>

namespace epb {

enum class ErrorCode {
  kParse,
  kContradiction,
  kUnknownObservable,
  kInvalidRegistry,
  kUndefinedContext,
  kOutOfRange,
  kInvalidBehavior,
  kDuplicateEvent,
  kLengthMismatch,
  kInvalidGraph,
  kTooLarge,
  kCliqueExplosion,
  kInfeasible,
  kNumericalFailure,
  kInvalidNinthEvent,
  kNotRepresentable,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; the code is what the C API surfaces.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace epb
